"""Global maximisation of a bivariate polynomial over the unit square.

The square is split the classical way: the four vertices (evaluated
exactly), the four sides (univariate maximisation of the restriction),
and the open interior (all critical points, found by multistart Newton on
the gradient system).  The maximum over the finite candidate list is the
global maximum provided every interior critical point has been found.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np

from . import kernels
from .objectives import BivariatePoly, IntPoly, edge_restrict, eval_poly, grad

log = logging.getLogger(__name__)

Kind = Literal["vertex", "edge", "interior", "exterior"]
_KIND_RANK = {"vertex": 0, "edge": 1, "interior": 2, "exterior": 3}

#: distance from the boundary below which a point counts as on an edge
BOX_MARGIN = 1e-7
DEDUP_DIST = 1e-6
NEWTON_MAXITER = 50
NEWTON_TOL = 1e-10
DEFAULT_REGION = ((-0.1, 1.1), (-0.1, 1.1))
EDGE_SCAN_POINTS = 4096


@dataclass(frozen=True)
class CriticalPoint:
    s: float
    u: float
    value: float
    #: sup-norm of the gradient divided by the largest gradient coefficient
    residual: float
    kind: Kind
    #: side of the square an edge candidate was found on, e.g. ``"u=0"``
    where: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BoxMaxResult:
    max_value: float
    argmax: tuple[float, float]
    argmax_kind: Kind
    all_candidates: tuple[CriticalPoint, ...]
    #: exact integer maximum when it is attained at a vertex
    exact_max: int | None = None
    n_singular_seeds: int = 0

    def to_dict(self) -> dict:
        return {
            "max_value": self.max_value,
            "exact_max": self.exact_max,
            "argmax": list(self.argmax),
            "argmax_kind": self.argmax_kind,
            "n_singular_seeds": self.n_singular_seeds,
            "candidates": [c.to_dict() for c in self.all_candidates],
        }


def classify(s: float, u: float, margin: float = BOX_MARGIN) -> Kind:
    inside = lambda x: margin < x < 1 - margin  # noqa: E731
    near = lambda x: -margin <= x <= 1 + margin  # noqa: E731
    if inside(s) and inside(u):
        return "interior"
    if not (near(s) and near(u)):
        return "exterior"
    on_side = lambda x: abs(x) <= margin or abs(x - 1) <= margin  # noqa: E731
    return "vertex" if on_side(s) and on_side(u) else "edge"


def _scale(*polys: BivariatePoly) -> float:
    return float(max(np.abs(p.coeffs).max() for p in polys)) or 1.0


def gradient_residual(ps: BivariatePoly, pu: BivariatePoly, s: float, u: float) -> float:
    """Scaled sup-norm of ``(ps, pu)`` at ``(s, u)``, evaluated afresh."""
    return max(abs(float(eval_poly(ps, s, u))), abs(float(eval_poly(pu, s, u)))) / _scale(ps, pu)


@dataclass
class NewtonStats:
    n_seeds: int = 0
    n_converged: int = 0
    n_singular: int = 0
    n_failed: int = 0
    roots: list[CriticalPoint] = field(default_factory=list)


def newton_search(ps: BivariatePoly, pu: BivariatePoly, region=DEFAULT_REGION,
                  grid_n: int = 64, objective: BivariatePoly | None = None) -> NewtonStats:
    """Run Newton from every cell centre of a ``grid_n x grid_n`` lattice on ``region``."""
    (s_lo, s_hi), (u_lo, u_hi) = region
    ss = s_lo + (np.arange(grid_n) + 0.5) * (s_hi - s_lo) / grid_n
    uu = u_lo + (np.arange(grid_n) + 0.5) * (u_hi - u_lo) / grid_n
    S0, U0 = (a.ravel() for a in np.meshgrid(ss, uu, indexing="ij"))

    pss, psu = grad(ps)
    pus, puu = grad(pu)
    scale = _scale(ps, pu)
    f = lambda p: p.coeffs.astype(float)  # noqa: E731
    s, u, resid, status = kernels.newton_multistart(
        f(ps), f(pu), f(pss), f(psu), f(pus), f(puu), S0, U0,
        NEWTON_MAXITER, NEWTON_TOL, scale,
    )
    stats = NewtonStats(n_seeds=len(S0))
    stats.n_singular = int(np.sum(status == kernels.SINGULAR))
    stats.n_failed = int(np.sum(status == kernels.FAILED))
    ok = status == kernels.CONVERGED
    stats.n_converged = int(ok.sum())
    if stats.n_singular:
        log.debug("%d of %d Newton seeds abandoned at a singular Jacobian",
                  stats.n_singular, stats.n_seeds)

    pts = sorted(zip(s[ok].tolist(), u[ok].tolist()))
    kept: list[tuple[float, float]] = []
    for p in pts:
        if not (s_lo <= p[0] <= s_hi and u_lo <= p[1] <= u_hi):
            continue
        if all(math.hypot(p[0] - q[0], p[1] - q[1]) > DEDUP_DIST for q in kept):
            kept.append(p)
    for x, y in sorted(kept):
        value = float(eval_poly(objective, x, y)) if objective is not None else math.nan
        stats.roots.append(CriticalPoint(x, y, value, gradient_residual(ps, pu, x, y),
                                         classify(x, y)))
    return stats


def critical_points(ps: BivariatePoly, pu: BivariatePoly, region=DEFAULT_REGION,
                    grid_n: int = 64, objective: BivariatePoly | None = None) -> list[CriticalPoint]:
    """Distinct real solutions of ``ps = pu = 0`` inside ``region``, sorted lexicographically.

    ``value`` is filled in from ``objective`` when given, NaN otherwise.
    """
    return newton_search(ps, pu, region, grid_n, objective).roots


def _bisect_newton(q: IntPoly, dq: IntPoly, a: float, b: float) -> float:
    fa = q(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = q(m)
        if fm == 0 or b - a < 1e-15:
            break
        if (fa < 0) == (fm < 0):
            a, fa = m, fm
        else:
            b = m
    x = 0.5 * (a + b)
    for _ in range(8):
        d = dq(x)
        if d == 0:
            break
        step = q(x) / d
        x_new = x - step
        if not (a - 1e-12 <= x_new <= b + 1e-12):
            break
        x = x_new
        if abs(step) < 1e-15:
            break
    return x


def edge_maximize(q: IntPoly, lo: float = 0.0, hi: float = 1.0) -> tuple[float, float]:
    """Maximum of ``q`` on ``[lo, hi]``: endpoints plus every sign change of ``q'``."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    dq = q.deriv()
    ddq = dq.deriv()
    xs = np.linspace(lo, hi, EDGE_SCAN_POINTS)
    ds = np.array([float(dq(float(x))) for x in xs])
    candidates = [lo, hi]
    for k in range(len(xs) - 1):
        if ds[k] == 0:
            candidates.append(float(xs[k]))
        elif ds[k] * ds[k + 1] < 0:
            candidates.append(_bisect_newton(dq, ddq, float(xs[k]), float(xs[k + 1])))
    best_x, best_v = lo, float(q(lo))
    for x in candidates:
        v = float(q(x))
        if v > best_v or (v == best_v and x < best_x):
            best_x, best_v = x, v
    return best_x, best_v


_EDGE_EMBED = {
    "s=0": lambda x: (0.0, x),
    "s=1": lambda x: (1.0, x),
    "u=0": lambda x: (x, 0.0),
    "u=1": lambda x: (x, 1.0),
}


def maximize_on_box(p: BivariatePoly, grid_n: int = 128, tol: float = 1e-10) -> BoxMaxResult:
    """Global maximum of ``p`` on ``[0, 1]^2``.

    Values within ``tol`` (relative) of the maximum are ties; ties go to
    the lexicographically smallest point, vertices before edges before
    interior points.
    """
    if grid_n < 64:
        raise ValueError(f"grid_n must be at least 64, got {grid_n}")
    ps, pu = grad(p)
    res = lambda s, u: gradient_residual(ps, pu, s, u)  # noqa: E731

    candidates: list[CriticalPoint] = []
    exact: dict[tuple[float, float], int] = {}
    for s, u in ((0, 0), (0, 1), (1, 0), (1, 1)):
        v = int(eval_poly(p, s, u))
        exact[(float(s), float(u))] = v
        candidates.append(CriticalPoint(float(s), float(u), float(v), res(s, u), "vertex"))
    for edge, embed in _EDGE_EMBED.items():
        x, _ = edge_maximize(edge_restrict(p, edge))
        s, u = embed(x)
        candidates.append(CriticalPoint(s, u, float(eval_poly(p, s, u)), res(s, u), "edge", edge))
    stats = newton_search(ps, pu, DEFAULT_REGION, grid_n, p)
    candidates += [c for c in stats.roots if c.kind == "interior"]

    top = max(c.value for c in candidates)
    band = tol * max(1.0, abs(top))
    tied = [c for c in candidates if c.value >= top - band]
    best = min(tied, key=lambda c: (c.s, c.u, _KIND_RANK[c.kind]))
    exact_max = exact.get((best.s, best.u)) if best.kind == "vertex" else None
    return BoxMaxResult(
        max_value=top,
        argmax=(best.s, best.u),
        argmax_kind=best.kind,
        all_candidates=tuple(candidates),
        exact_max=exact_max,
        n_singular_seeds=stats.n_singular,
    )
