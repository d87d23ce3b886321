"""Exact integer polynomials in ``(s, u)`` and the four bounding objectives.

``g`` and ``g1`` bound ``8640 |H_3(1)(f^{-1})|`` for ``f in R`` on the two
branches of the ``|t_3|`` estimate; ``h`` and ``h1`` play the same role for
``74649600 |H_3(1)(f^{-1})|`` on ``R1``.  Here ``s = |t_1|`` and
``u = |t_2|``.  Objectives are written in factored form below and expanded
by exact integer arithmetic; nothing is transcribed in expanded form.
"""

from __future__ import annotations

import ast
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, TextIO

import numpy as np

from . import kernels

ObjectiveName = Literal["g", "g1", "h", "h1"]
OBJECTIVES = ("g", "g1", "h", "h1")
EDGES = ("s=0", "s=1", "u=0", "u=1")

_COEFF_LIMIT = 2**53  # keep float64 evaluation of every coefficient exact


@dataclass(frozen=True, eq=False)
class BivariatePoly:
    """``sum coeffs[i, j] * s**i * u**j`` with exact integer coefficients."""

    coeffs: np.ndarray
    name: str = ""

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.coeffs, dtype=np.int64)).copy()
        c = _trim(c)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def const(cls, k: int) -> "BivariatePoly":
        return cls(np.array([[k]]))

    @classmethod
    def var(cls, which: str) -> "BivariatePoly":
        return cls(np.array([[0, 0], [1, 0]]) if which == "s" else np.array([[0, 1]]))

    @property
    def degree(self) -> tuple[int, int]:
        return self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"BivariatePoly({label}{self.to_str()})"

    # -- ring operations (used to expand factored forms) -----------------

    @staticmethod
    def _lift(x) -> "BivariatePoly":
        if isinstance(x, BivariatePoly):
            return x
        if isinstance(x, (int, np.integer)):
            return BivariatePoly.const(int(x))
        raise TypeError(f"cannot combine BivariatePoly with {type(x).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        shape = np.maximum(self.coeffs.shape, other.coeffs.shape)
        out = np.zeros(shape, dtype=np.int64)
        out[: self.coeffs.shape[0], : self.coeffs.shape[1]] += self.coeffs
        out[: other.coeffs.shape[0], : other.coeffs.shape[1]] += other.coeffs
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly(-self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=object)
        for (i, j), v in np.ndenumerate(a):
            if v:
                out[i : i + b.shape[0], j : j + b.shape[1]] += int(v) * b.astype(object)
        if np.abs(out).max(initial=0) >= _COEFF_LIMIT:
            raise OverflowError("coefficient exceeds the exact float64 range")
        return BivariatePoly(out.astype(np.int64))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = BivariatePoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    # -- evaluation -------------------------------------------------------

    def __call__(self, s, u):
        return eval_poly(self, s, u)

    def to_str(self) -> str:
        terms = []
        for (i, j), v in np.ndenumerate(self.coeffs):
            if v:
                mono = "*".join(x for x in (_pow("s", i), _pow("u", j)) if x)
                terms.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def monomials(self) -> list[tuple[int, int, int]]:
        """Nonzero ``(i, j, coeff)`` triples in row-major order."""
        return [(i, j, int(v)) for (i, j), v in np.ndenumerate(self.coeffs) if v]


def _pow(var: str, k: int) -> str:
    return "" if k == 0 else var if k == 1 else f"{var}**{k}"


def _trim(c: np.ndarray) -> np.ndarray:
    rows = np.nonzero(c.any(axis=1))[0]
    cols = np.nonzero(c.any(axis=0))[0]
    if len(rows) == 0:
        return np.zeros((1, 1), dtype=np.int64)
    return c[: rows[-1] + 1, : cols[-1] + 1]


# --------------------------------------------------------------------------
# parsing of factored expressions


_ALLOWED_BINOPS = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__"}


def parse_poly(text: str, name: str = "") -> BivariatePoly:
    """Expand an integer polynomial expression in ``s`` and ``u``.

    Accepts ``+ - *``, integer powers (``**`` or ``^``), integer literals and
    parentheses; ``x`` is accepted as an alias of ``s``.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    s, u = BivariatePoly.var("s"), BivariatePoly.var("u")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exponent = node.right
                if not (isinstance(exponent, ast.Constant) and isinstance(exponent.value, int)):
                    raise ValueError("exponents must be integer literals")
                return BivariatePoly._lift(walk(node.left)) ** exponent.value
            method = _ALLOWED_BINOPS.get(type(node.op))
            if method is None:
                raise ValueError(f"operator {type(node.op).__name__} not allowed")
            return getattr(BivariatePoly._lift(walk(node.left)), method)(walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = BivariatePoly._lift(walk(node.operand))
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return BivariatePoly.const(node.value)
        if isinstance(node, ast.Name) and node.id in ("s", "x", "u"):
            return u if node.id == "u" else s
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return BivariatePoly(BivariatePoly._lift(walk(tree)).coeffs, name)


# --------------------------------------------------------------------------
# the objectives, in factored form

_COMMON_R = (
    "208*s^6 + 16*u*(1-s^2)*(132*s^4 + 6*s^2*(50-41*s^2)*u"
    " + 4*(35*s^4-61*s^2+44)*u^2 + 9*s^2*(1-s^2)*u^3)"
    " + 288*s*(1-s^2)*(1-u^2)*((1-s^2)*u^2 + 2*(3+s^2)*u + 3*s^2)"
)
_COMMON_R1 = (
    "76288*s^6 + 64*u*(1-s^2)*(1740*s^4 + 6*s^2*(2986-1447*s^2)*u"
    " + 4*(1621*s^4-2189*s^2+1216)*u^2 + 2511*s^2*(1-s^2)*u^3)"
    " + 10368*(1-s^2)*(1-u^2)*(31*(1-s^2)*s*u^2 + 2*(3+13*s^2)*s*u + 57*s^3)"
)

FACTORED = {
    # |t_3| = 1 branch: the t_3^2 term dominates the t_4 term
    "g": _COMMON_R + " + 144*(1-s^2)*(1-u^2)*((1-s^2)*(15+u^2) + 8*s^2*u)",
    # |t_3| = 0 branch: only the t_4 term survives
    "g1": _COMMON_R + " + 1152*(1-s^2)*(1-u^2)*(2*(1-s^2)*u + s^2)",
    "h": _COMMON_R1 + " + 5184*(1-s^2)*(1-u^2)*((1-s^2)*(31*u^2+225) + 32*s^2*u)",
    "h1": _COMMON_R1 + " + 165888*(1-s^2)*(1-u^2)*(8*(1-s^2)*u + s^2)",
}

#: which objectives bound which class, and the matching normalizer
CLASS_OBJECTIVES = {"R": ("g", "g1"), "R1": ("h", "h1")}


@lru_cache(maxsize=None)
def build(which: ObjectiveName) -> BivariatePoly:
    if which not in FACTORED:
        raise ValueError(f"unknown objective {which!r}; choose from {OBJECTIVES}")
    return parse_poly(FACTORED[which], which)


def eval_poly(p: BivariatePoly, s, u):
    """Nested Horner, ``u`` outermost.

    Python ints and Fractions give exact results; floats and arrays are
    evaluated in double precision (arrays through the compiled kernel).
    """
    if isinstance(s, np.ndarray) or isinstance(u, np.ndarray):
        s_arr, u_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(u, dtype=float))
        out = kernels.poly_eval(p.coeffs.astype(float), s_arr.ravel(), u_arr.ravel())
        return out.reshape(s_arr.shape)
    rows = p.coeffs.T.tolist()  # rows[j][i] = coeff of s^i u^j
    acc = 0
    for row in reversed(rows):
        inner = 0
        for c in reversed(row):
            inner = inner * s + c
        acc = acc * u + inner
    return acc


def grad(p: BivariatePoly) -> tuple[BivariatePoly, BivariatePoly]:
    """Formal partial derivatives ``(dp/ds, dp/du)``."""
    c = p.coeffs
    i = np.arange(c.shape[0])[:, None]
    j = np.arange(c.shape[1])[None, :]
    ds = (c * i)[1:] if c.shape[0] > 1 else np.zeros((1, 1), dtype=np.int64)
    du = (c * j)[:, 1:] if c.shape[1] > 1 else np.zeros((1, 1), dtype=np.int64)
    tag = p.name
    return (BivariatePoly(ds, f"d{tag}/ds" if tag else ""),
            BivariatePoly(du, f"d{tag}/du" if tag else ""))


@dataclass(frozen=True)
class IntPoly:
    """Univariate integer polynomial, coefficients in ascending order."""

    coeffs: tuple[int, ...]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self) -> "IntPoly":
        d = tuple(k * c for k, c in enumerate(self.coeffs))[1:]
        return IntPoly(d or (0,))

    def __str__(self) -> str:
        terms = [f"{c}" + (f"*{_pow('x', k)}" if k else "") for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms).replace("+ -", "- ") or "0"


def edge_restrict(p: BivariatePoly, edge: str) -> IntPoly:
    """Restriction to one side of the unit square, as a polynomial in the free variable."""
    c = p.coeffs.astype(object)
    if edge == "s=0":
        out = c[0, :]
    elif edge == "s=1":
        out = c.sum(axis=0)
    elif edge == "u=0":
        out = c[:, 0]
    elif edge == "u=1":
        out = c.sum(axis=1)
    else:
        raise ValueError(f"unknown edge {edge!r}; choose from {EDGES}")
    out = [int(x) for x in out]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return IntPoly(tuple(out))


def envelope(class_id: str, s, u):
    """Max of the two branch objectives of ``class_id`` at ``(s, u)``."""
    a, b = (build(name) for name in CLASS_OBJECTIVES[class_id])
    va, vb = eval_poly(a, s, u), eval_poly(b, s, u)
    return np.maximum(va, vb) if isinstance(va, np.ndarray) else max(va, vb)


def exact_value(p: BivariatePoly, s, u) -> Fraction:
    """Exact value at rational ``(s, u)``."""
    return Fraction(eval_poly(p, Fraction(s), Fraction(u)))


def dump_monomials(p: BivariatePoly, out: TextIO | None = None) -> str:
    """Write ``i,j,coeff`` rows (with header) and return the text."""
    buf = io.StringIO()
    buf.write("i,j,coeff\n")
    for i, j, v in p.monomials():
        buf.write(f"{i},{j},{v}\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
