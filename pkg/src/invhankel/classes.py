"""Coefficient maps for the bounded turning classes R and R1.

``f in R`` when ``f' = p`` and ``f in R1`` when ``(z f')' = p`` for some
``p`` with positive real part.  The functions here turn Carathéodory
coefficients into Taylor coefficients of ``f``, those into coefficients of
``f^{-1}``, and those into Hankel determinants.  Closed-form shortcuts are
paired with the generic series route so one can check the other.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import Iterator, Literal, Sequence

import numpy as np

from .caratheodory import CaratheodoryCoeffs
from .power_series import (
    DEFAULT_ORDER,
    SeriesDomainError,
    TruncatedSeries,
    exp,
    integrate,
    log,
    revert,
)

ClassId = Literal["R", "R1"]
CLASS_IDS = ("R", "R1")

#: denominators that clear the closed-form H_3 polynomials
NORMALIZER = {"R": 8640, "R1": 74649600}


@dataclass(frozen=True)
class ClassCoeffs:
    """Taylor coefficients ``a_2 .. a_5`` of ``f(z) = z + a_2 z^2 + ...``."""

    a2: complex
    a3: complex
    a4: complex
    a5: complex

    def __iter__(self) -> Iterator[complex]:
        return iter(astuple(self))

    def series(self, order: int = 5) -> TruncatedSeries:
        return TruncatedSeries([0, 1, *self], order)

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "ClassCoeffs":
        return cls(*(f[n] for n in range(2, 6)))


@dataclass(frozen=True)
class InverseCoeffs:
    """Taylor coefficients ``A_2 .. A_5`` of ``f^{-1}(w) = w + A_2 w^2 + ...``."""

    A2: complex
    A3: complex
    A4: complex
    A5: complex

    def __iter__(self) -> Iterator[complex]:
        return iter(astuple(self))

    @classmethod
    def from_series(cls, b: TruncatedSeries) -> "InverseCoeffs":
        return cls(*(b[n] for n in range(2, 6)))


def from_caratheodory_R(c: CaratheodoryCoeffs) -> ClassCoeffs:
    c1, c2, c3, c4 = c
    return ClassCoeffs(c1 / 2, c2 / 3, c3 / 4, c4 / 5)


def from_caratheodory_R1(c: CaratheodoryCoeffs) -> ClassCoeffs:
    # (z f')' = 1 + sum n^2 a_n z^(n-1), so a_n = c_{n-1} / n^2
    c1, c2, c3, c4 = c
    return ClassCoeffs(c1 / 4, c2 / 9, c3 / 16, c4 / 25)


def from_caratheodory(c: CaratheodoryCoeffs, class_id: ClassId) -> ClassCoeffs:
    if class_id == "R":
        return from_caratheodory_R(c)
    if class_id == "R1":
        return from_caratheodory_R1(c)
    raise ValueError(f"unknown class {class_id!r}")


def inverse_coeffs(a: ClassCoeffs) -> InverseCoeffs:
    a2, a3, a4, a5 = a
    return InverseCoeffs(
        -a2,
        2 * a2**2 - a3,
        5 * a2 * a3 - 5 * a2**3 - a4,
        14 * a2**4 - 21 * a3 * a2**2 + 6 * a2 * a4 + 3 * a3**2 - a5,
    )


def h3(x2, x3, x4, x5):
    """``H_3(1)`` of a sequence ``1, x_2, x_3, x_4, x_5``."""
    return 2 * x2 * x3 * x4 - x3**3 - x4**2 + x3 * x5 - x2**2 * x5


def hankel(q: int, n: int, coeffs: Sequence[complex]) -> complex:
    """Determinant of ``[a_{n+i+j}]_{i,j=0}^{q-1}``.

    ``coeffs[0]`` is ``a_1``; entries up to index ``n + 2q - 2`` must be present.
    """
    if q < 1 or n < 1:
        raise ValueError("q and n must be positive")
    if q > 4:
        raise ValueError("only determinants up to 4x4 are supported")
    need = n + 2 * q - 2
    if len(coeffs) < need:
        raise ValueError(f"H_{q}({n}) needs a_1..a_{need}, got {len(coeffs)} coefficients")
    a = np.asarray(coeffs, dtype=complex)
    M = np.array([[a[n - 1 + i + j] for j in range(q)] for i in range(q)])
    return _det(M)


def _det(M: np.ndarray) -> complex:
    # cofactor expansion; exact arithmetic order for tiny matrices
    if len(M) == 1:
        return complex(M[0, 0])
    total = 0j
    for j in range(len(M)):
        minor = np.delete(M[1:], j, axis=1)
        total += (-1) ** j * M[0, j] * _det(minor)
    return total


def _poly_R(c1, c2, c3, c4):
    return (
        -540 * c1**4 * c2 - 432 * c1**2 * c4 + 720 * c1**2 * c2**2 + 576 * c2 * c4
        - 540 * c3**2 + 720 * c1 * c2 * c3 + 135 * c1**6 - 640 * c2**3
    )


def _poly_R1(c1, c2, c3, c4):
    return (
        -97200 * c1**4 * c2 - 186624 * c1**2 * c4 + 172800 * c1**2 * c2**2
        + 331776 * c2 * c4 - 291600 * c3**2 + 18225 * c1**6
        + 259200 * c1 * c2 * c3 - 204800 * c2**3
    )


def scaled_h3_inverse(c1, c2, c3, c4, class_id: ClassId):
    """``NORMALIZER[class_id] * H_3(1)(f^{-1})``; works on arrays."""
    return _poly_R(c1, c2, c3, c4) if class_id == "R" else _poly_R1(c1, c2, c3, c4)


def h3_inverse_R(c: CaratheodoryCoeffs) -> complex:
    return complex(_poly_R(*c)) / 8640


def h3_inverse_R1(c: CaratheodoryCoeffs) -> complex:
    return complex(_poly_R1(*c)) / 74649600


def h3_of_inverse_series(f: TruncatedSeries) -> complex:
    """H_3(1) of ``f^{-1}`` computed by series reversion."""
    b = revert(f.truncate(5) if f.order > 5 else f)
    return complex(h3(*InverseCoeffs.from_series(b)))


# --------------------------------------------------------------------------
# the correspondence between R and starlike functions


def _check_normalized(f: TruncatedSeries, name: str) -> None:
    if f.order < 1 or abs(f[0]) > 1e-12 or abs(f[1] - 1) > 1e-12:
        raise SeriesDomainError(f"{name} must satisfy {name}(0) = 0, {name}'(0) = 1")


def r_from_starlike(g: TruncatedSeries) -> TruncatedSeries:
    """``f(z) = z + z log(g/z) - int_0^z log(g(s)/s) ds``; then ``f' = z g'/g``."""
    _check_normalized(g, "g")
    L = log(g.shift(-1))
    z = TruncatedSeries.identity(g.order)
    return z + L.shift(1) - integrate(L)


def starlike_from_r(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse of :func:`r_from_starlike`: ``g(z) = z exp(int_0^z (f'(s) - 1)/s ds)``."""
    _check_normalized(f, "f")
    integrand = (f.derivative() - 1).shift(-1)
    return exp(integrate(integrand)).shift(1)


# --------------------------------------------------------------------------
# extremal functions


def extremal_f0_arctanh(N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``-z + 2 artanh z``, built by integrating ``f' = (1 + z^2)/(1 - z^2)``."""
    if N < 5:
        raise ValueError("need N >= 5")
    p = 2 * TruncatedSeries.geometric(1.0, N - 1, power=2) - 1
    return integrate(p)


def extremal_fstar_R1(N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The solution of ``(z f')' = (1 + z^3)/(1 - z^3)`` with ``f(0) = 0``."""
    if N < 7:
        raise ValueError("need N >= 7")
    p = 2 * TruncatedSeries.geometric(1.0, N - 1, power=3) - 1
    zfprime = integrate(p)
    return integrate(zfprime.shift(-1))


def extremal_f0_theta(theta: float, N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``-z - 2 e^{i theta} log(1 - e^{-i theta} z)``; ``|a_n| = 2/n`` for all ``n >= 2``."""
    if N < 2:
        raise ValueError("need N >= 2")
    x = np.exp(-1j * theta)
    inner = TruncatedSeries([1, -x], N)
    return -TruncatedSeries.identity(N) - log(inner) * complex(2 * np.exp(1j * theta))
