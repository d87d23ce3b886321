"""Backend selection for the hot kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise,
or when the environment variable ``INVHANKEL_PURE_PYTHON`` is set to a
non-empty value, the numpy implementation in ``_kernels_py`` is used.
Both expose the same functions.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("INVHANKEL_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

CONVERGED, SINGULAR, FAILED = _kernels_py.CONVERGED, _kernels_py.SINGULAR, _kernels_py.FAILED

poly_eval = _impl.poly_eval
h3_from_schur = _impl.h3_from_schur
newton_multistart = _impl.newton_multistart


def implementations() -> dict:
    """All importable backends by name, for benchmarks and cross-checks."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
