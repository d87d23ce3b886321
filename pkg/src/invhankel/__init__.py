"""Sharp third Hankel determinant bounds for inverse coefficients of
bounded turning functions, verified numerically.

The bound for ``f in R`` is ``|H_3(1)(f^{-1})| <= 44/135``; for ``f in R1``
it is ``1/64``.  See :mod:`invhankel.verification` for the full runs and
:mod:`invhankel.cli` for the command-line entry point.
"""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
