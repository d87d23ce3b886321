"""Truncated power series over complex doubles.

A :class:`TruncatedSeries` stores the coefficients ``a_0 .. a_N`` of an
analytic function around the origin.  Binary arithmetic truncates to the
smaller of the two orders, so every result only claims coefficients that
are actually determined by its operands.
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

Scalar = Union[int, float, complex]

#: Truncation order used when building extremal functions and transforms.
DEFAULT_ORDER = 30

_UNIT_TOL = 1e-12


class SeriesDomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


class TruncatedSeries:
    """Coefficients ``a_0 .. a_N`` of a power series, known modulo ``z**(N+1)``.

    Instances are immutable; the coefficient array is read-only.
    """

    __slots__ = ("_c",)
    __array_ufunc__ = None  # make numpy scalars defer to our operators

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=np.complex128).ravel()
        if order is not None:
            if order < 0:
                raise ValueError(f"order must be non-negative, got {order}")
            if len(c) < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - len(c), dtype=np.complex128)])
            else:
                c = c[: order + 1].copy()
        if len(c) == 0:
            raise ValueError("a series needs at least one coefficient")
        c.setflags(write=False)
        self._c = c

    # -- construction helpers -------------------------------------------

    @classmethod
    def constant(cls, value: Scalar, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([value], order)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        """The series ``z``."""
        return cls([0, 1], order)

    @classmethod
    def geometric(cls, x: Scalar = 1.0, order: int = DEFAULT_ORDER,
                  power: int = 1) -> "TruncatedSeries":
        """``1 / (1 - x z**power)``."""
        c = np.zeros(order + 1, dtype=np.complex128)
        k = np.arange(0, order + 1, power)
        c[k] = np.asarray(x, dtype=np.complex128) ** (k // power)
        return cls(c)

    # -- basic protocol -------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return len(self._c) - 1

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, n: int) -> complex:
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient {n} is outside 0..{self.order}")
        return complex(self._c[n])

    def __repr__(self) -> str:
        shown = ", ".join(_fmt(x) for x in self._c[:6])
        tail = ", ..." if self.order >= 6 else ""
        return f"TruncatedSeries([{shown}{tail}], order={self.order})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1])

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order)
        return bool(np.all(np.abs(self._c[: n + 1] - other._c[: n + 1]) <= atol))

    def max_abs_diff(self, other: "TruncatedSeries") -> float:
        n = min(self.order, other.order)
        return float(np.max(np.abs(self._c[: n + 1] - other._c[: n + 1])))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return TruncatedSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return TruncatedSeries(self._c[: n + 1] + other._c[: n + 1])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return TruncatedSeries(self._c * other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return TruncatedSeries(np.convolve(self._c[: n + 1], other._c[: n + 1])[: n + 1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return TruncatedSeries(self._c / other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * reciprocal(other)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``z**k`` (``k < 0`` divides, dropping nothing nonzero)."""
        if k >= 0:
            return TruncatedSeries(np.concatenate([np.zeros(k, dtype=np.complex128), self._c]))
        if np.any(self._c[:-k] != 0):
            raise SeriesDomainError(f"series is not divisible by z**{-k}")
        if self.order + k < 0:
            raise SeriesDomainError("division leaves no coefficients")
        return TruncatedSeries(self._c[-k:])

    # -- calculus & transcendental functions, as methods ------------------

    def derivative(self) -> "TruncatedSeries":
        return derivative(self)

    def integrate(self) -> "TruncatedSeries":
        return integrate(self)

    def log(self) -> "TruncatedSeries":
        return log(self)

    def exp(self) -> "TruncatedSeries":
        return exp(self)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, inner)

    def revert(self) -> "TruncatedSeries":
        return revert(self)

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (Horner)."""
        acc = 0j
        for a in self._c[::-1]:
            acc = acc * z + a
        return acc


def _fmt(x: complex) -> str:
    if x.imag == 0:
        return f"{x.real:.6g}"
    return f"{x.real:.6g}{x.imag:+.6g}j"


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the result has order ``N - 1``."""
    if a.order == 0:
        return TruncatedSeries([0])
    n = np.arange(1, a.order + 1)
    return TruncatedSeries(a.coeffs[1:] * n)


def integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative vanishing at 0; the result has order ``N + 1``."""
    n = np.arange(1, a.order + 2)
    return TruncatedSeries(np.concatenate([[0], a.coeffs / n]))


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    c = a.coeffs
    if abs(c[0]) == 0:
        raise SeriesDomainError("reciprocal needs a nonzero constant term")
    out = np.zeros_like(c)
    out[0] = 1 / c[0]
    for n in range(1, len(c)):
        out[n] = -np.dot(c[1 : n + 1], out[n - 1 :: -1][:n]) / c[0]
    return TruncatedSeries(out)


def log(a: TruncatedSeries) -> TruncatedSeries:
    """Logarithm of a series with constant term 1, via ``L' = a'/a``."""
    if abs(a[0] - 1) > _UNIT_TOL:
        raise SeriesDomainError(f"log needs constant term 1, got {a[0]}")
    if a.order == 0:
        return TruncatedSeries([0])
    return integrate(derivative(a) * reciprocal(a.truncate(a.order - 1)))


def exp(a: TruncatedSeries) -> TruncatedSeries:
    """Exponential of a series with zero constant term.

    Uses the recurrence ``n E_n = sum_{k=1}^{n} k a_k E_{n-k}``.
    """
    if abs(a[0]) > _UNIT_TOL:
        raise SeriesDomainError(f"exp needs a zero constant term, got {a[0]}")
    c = a.coeffs
    ka = c * np.arange(len(c))
    e = np.zeros_like(c)
    e[0] = 1
    for n in range(1, len(c)):
        e[n] = np.dot(ka[1 : n + 1], e[n - 1 :: -1][:n]) / n
    return TruncatedSeries(e)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` for ``inner`` without constant term."""
    if abs(inner[0]) != 0:
        raise SeriesDomainError("composition needs an inner series with zero constant term")
    n = min(outer.order, inner.order)
    b = inner.coeffs[: n + 1]
    acc = np.zeros(n + 1, dtype=np.complex128)
    for coef in outer.coeffs[: n + 1][::-1]:
        acc = np.convolve(acc, b)[: n + 1]
        acc[0] += coef
    return TruncatedSeries(acc)


def revert(a: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``b`` with ``a(b(w)) = w`` modulo ``w**(N+1)``.

    Solves for ``b_n`` one coefficient at a time: since ``a_1 = 1`` the
    unknown ``b_n`` enters ``[w^n] a(b(w))`` only through the linear term,
    and every other contribution uses ``b_1 .. b_{n-1}``.
    """
    if a.order < 1 or abs(a[0]) > _UNIT_TOL or abs(a[1] - 1) > _UNIT_TOL:
        raise SeriesDomainError("revert needs a_0 = 0 and a_1 = 1")
    N = a.order
    ac = a.coeffs
    b = np.zeros(N + 1, dtype=np.complex128)
    b[1] = 1
    for n in range(2, N + 1):
        # [w^n] of sum_{k>=2} a_k b^k, with b known through degree n-1
        power = b[: n + 1].copy()
        total = 0j
        for k in range(2, n + 1):
            power = np.convolve(power, b[: n + 1])[: n + 1]
            total += ac[k] * power[n]
        b[n] = -total
    return TruncatedSeries(b)
