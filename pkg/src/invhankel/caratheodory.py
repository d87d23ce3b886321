"""Carathéodory coefficients and their Schur-parameter description.

Every ``p(z) = 1 + c_1 z + c_2 z^2 + ...`` with positive real part on the
unit disk has its first four coefficients given by four points
``t_1 .. t_4`` of the closed disk (and conversely every such quadruple is
realised).  This module maps Schur parameters to coefficients, samples
them reproducibly, checks membership through the Toeplitz condition, and
evaluates the scaled third Hankel determinant of ``f^{-1}`` directly in
Schur parameters.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import Iterator, Literal

import numpy as np

_DISK_TOL = 1e-12

#: uniforms consumed per sample: four radii, four angles, four face snaps
_DRAWS_PER_SAMPLE = 12
_PHILOX_STEPS_PER_SAMPLE = _DRAWS_PER_SAMPLE // 4

SamplingMode = Literal["uniform", "boundary-biased"]
SAMPLING_MODES = ("uniform", "boundary-biased")


@dataclass(frozen=True)
class SchurParams:
    t1: complex
    t2: complex
    t3: complex
    t4: complex

    def __post_init__(self):
        for k, t in enumerate(astuple(self), start=1):
            if abs(t) > 1 + _DISK_TOL:
                raise ValueError(f"|t{k}| = {abs(t)!r} exceeds 1")

    def __iter__(self) -> Iterator[complex]:
        return iter(astuple(self))

    @classmethod
    def from_array(cls, row) -> "SchurParams":
        return cls(*(complex(x) for x in row))


@dataclass(frozen=True)
class CaratheodoryCoeffs:
    c1: complex
    c2: complex
    c3: complex
    c4: complex

    def __iter__(self) -> Iterator[complex]:
        return iter(astuple(self))


@dataclass(frozen=True)
class HerglotzAtoms:
    """A finitely supported probability measure on the unit circle."""

    weights: tuple[float, ...]
    points: tuple[complex, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        x = np.asarray(self.points, dtype=complex)
        if w.shape != x.shape or w.ndim != 1 or len(w) == 0:
            raise ValueError("weights and points must be non-empty and of equal length")
        if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
            raise ValueError("weights must be non-negative and sum to 1")
        if np.any(np.abs(np.abs(x) - 1) > 1e-12):
            raise ValueError("atoms must lie on the unit circle")

    @classmethod
    def random(cls, rng: np.random.Generator, n_atoms: int) -> "HerglotzAtoms":
        w = rng.dirichlet(np.ones(n_atoms))
        x = np.exp(2j * np.pi * rng.random(n_atoms))
        return cls(tuple(w.tolist()), tuple(x.tolist()))

    def moments(self, n: int) -> np.ndarray:
        """``c_1 .. c_n`` of ``p(z) = sum_k w_k (1 + x_k z) / (1 - x_k z)``."""
        w = np.asarray(self.weights)
        x = np.asarray(self.points)
        k = np.arange(1, n + 1)[:, None]
        return 2 * (w * x**k).sum(axis=1)


# --------------------------------------------------------------------------
# coefficient formulas; these accept scalars or equally shaped numpy arrays


def schur_to_c_arrays(t1, t2, t3, t4):
    m1 = np.abs(t1) ** 2
    a1 = 1 - m1
    a2 = 1 - np.abs(t2) ** 2
    a3 = 1 - np.abs(t3) ** 2
    b1 = np.conj(t1)
    b2 = np.conj(t2)
    c1 = 2 * t1
    c2 = 2 * t1**2 + 2 * a1 * t2
    c3 = 2 * t1**3 + 4 * a1 * t1 * t2 - 2 * a1 * b1 * t2**2 + 2 * a1 * a2 * t3
    c4 = (
        2 * t1**4
        + 2 * a1 * (3 * t1**2 + b1**2 * t2**2 - 3 * m1 * t2 + t2) * t2
        + 2 * a1 * a2 * (2 * t1 - 2 * b1 * t2 - b2 * t3) * t3
        + 2 * a1 * a2 * a3 * t4
    )
    return c1, c2, c3, c4


def scaled_h3_schur_R(t1, t2, t3, t4):
    """``8640 * H_3(1)(f^{-1})`` for ``f' = p``, expanded in Schur parameters."""
    m1 = np.abs(t1) ** 2
    a1 = 1 - m1
    a2 = 1 - np.abs(t2) ** 2
    a3 = 1 - np.abs(t3) ** 2
    b1 = np.conj(t1)
    b2 = np.conj(t2)
    return (
        208 * t1**6
        + 16 * t2 * a1 * (
            -132 * t1**4
            + 6 * t1**2 * (50 - 41 * m1) * t2
            - 4 * (35 * m1**2 - 61 * m1 + 44) * t2**2
            + 9 * b1**2 * a1 * t2**3
        )
        - 288 * a1 * a2 * (a1 * b1 * t2**2 - 2 * (3 + m1) * t1 * t2 + 3 * t1**3) * t3
        - 144 * a1 * a2 * (a1 * (np.abs(t2) ** 2 + 15) - 8 * t1**2 * b2) * t3**2
        + 1152 * a1 * a2 * a3 * (2 * a1 * t2 - t1**2) * t4
    )


def scaled_h3_schur_R1(t1, t2, t3, t4):
    """``74649600 * H_3(1)(f^{-1})`` for ``(z f')' = p``, in Schur parameters."""
    m1 = np.abs(t1) ** 2
    a1 = 1 - m1
    a2 = 1 - np.abs(t2) ** 2
    a3 = 1 - np.abs(t3) ** 2
    b1 = np.conj(t1)
    b2 = np.conj(t2)
    return (
        -76288 * t1**6
        + 64 * t2 * a1 * (
            -1740 * t1**4
            + 6 * t1**2 * (2986 - 1447 * m1) * t2
            - 4 * (1621 * m1**2 - 2189 * m1 + 1216) * t2**2
            + 2511 * b1**2 * a1 * t2**3
        )
        - 10368 * a1 * a2 * (31 * a1 * b1 * t2**2 - 2 * (3 + 13 * m1) * t1 * t2 + 57 * t1**3) * t3
        - 5184 * a1 * a2 * (a1 * (31 * np.abs(t2) ** 2 + 225) - 32 * t1**2 * b2) * t3**2
        + 165888 * a1 * a2 * a3 * (8 * a1 * t2 - t1**2) * t4
    )


# --------------------------------------------------------------------------
# typed operations


def schur_to_c(t: SchurParams) -> CaratheodoryCoeffs:
    return CaratheodoryCoeffs(*(complex(c) for c in schur_to_c_arrays(*t)))


def herglotz_c(atoms: HerglotzAtoms) -> CaratheodoryCoeffs:
    return CaratheodoryCoeffs(*(complex(c) for c in atoms.moments(4)))


def toeplitz_matrix(c, order: int = 5) -> np.ndarray:
    """Hermitian Toeplitz matrix with diagonal 2 and super-diagonals ``c_1, c_2, ...``."""
    if not 1 <= order <= 5:
        raise ValueError(f"order must be in 1..5, got {order}")
    seq = np.concatenate([[2.0 + 0j], np.asarray(list(c), dtype=complex)])
    T = np.empty((order, order), dtype=complex)
    for i in range(order):
        for j in range(order):
            T[i, j] = seq[j - i] if j >= i else np.conj(seq[i - j])
    return T


def toeplitz_min_eig(c: CaratheodoryCoeffs, order: int = 5) -> float:
    """Smallest eigenvalue of the Carathéodory-Toeplitz matrix.

    A value below ``-tol`` certifies that ``c`` is *not* the coefficient
    sequence of a function with positive real part.
    """
    return float(np.linalg.eigvalsh(toeplitz_matrix(c, order))[0])


def h3_schur_R(t: SchurParams) -> complex:
    return complex(scaled_h3_schur_R(*t)) / 8640


def h3_schur_R1(t: SchurParams) -> complex:
    return complex(scaled_h3_schur_R1(*t)) / 74649600


def branch_condition_R(t1: complex, t2: complex) -> float:
    """Nonnegative selects the branch bounded by ``g``, negative the one bounded by ``g1``."""
    a1 = 1 - abs(t1) ** 2
    return abs(a1 * (15 + abs(t2) ** 2) - 8 * t1**2 * np.conj(t2)) - 8 * abs(2 * a1 * t2 - t1**2)


def branch_condition_R1(t1: complex, t2: complex) -> float:
    a1 = 1 - abs(t1) ** 2
    return abs(a1 * (31 * abs(t2) ** 2 + 225) - 32 * t1**2 * np.conj(t2)) - 32 * abs(8 * a1 * t2 - t1**2)


# --------------------------------------------------------------------------
# sampling


def _draws(seed: int, start: int, count: int) -> np.ndarray:
    # Counter-based stream: sample i always consumes the same Philox block,
    # so any slice of the sequence can be regenerated independently.
    bg = np.random.Philox(key=seed)
    bg.advance(_PHILOX_STEPS_PER_SAMPLE * start)
    return np.random.Generator(bg).random((count, _DRAWS_PER_SAMPLE))


def sample_schur_batch(seed: int, mode: SamplingMode = "uniform", start: int = 0,
                       count: int = 1) -> np.ndarray:
    """Samples ``start .. start+count-1`` of the stream as a ``(count, 4)`` complex array."""
    if mode not in SAMPLING_MODES:
        raise ValueError(f"unknown sampling mode {mode!r}")
    u = _draws(seed, start, count)
    r = np.sqrt(u[:, 0:4])
    phase = np.exp(2j * np.pi * u[:, 4:8])
    if mode == "boundary-biased":
        snap = u[:, 8:12]
        r = np.where(snap < 0.25, 0.0, np.where(snap < 0.5, 1.0, r))
    return r * phase


def sample_schur(seed: int, mode: SamplingMode = "uniform", index: int = 0) -> SchurParams:
    """The ``index``-th point of the deterministic stream for ``seed``."""
    return SchurParams.from_array(sample_schur_batch(seed, mode, index, 1)[0])
