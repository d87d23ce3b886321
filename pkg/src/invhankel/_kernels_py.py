"""Pure numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or when ``INVHANKEL_PURE_PYTHON`` is set.
"""

from __future__ import annotations

import numpy as np

from .caratheodory import schur_to_c_arrays
from .classes import scaled_h3_inverse

CONVERGED, SINGULAR, FAILED = 0, 1, 2

_DIVERGED = 1e3
POLISH_STEPS = 3


def poly_eval(coeffs: np.ndarray, s: np.ndarray, u: np.ndarray) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=float)
    s = np.asarray(s, dtype=float)
    u = np.asarray(u, dtype=float)
    acc = np.zeros(np.broadcast(s, u).shape)
    for j in range(coeffs.shape[1] - 1, -1, -1):
        inner = np.zeros_like(acc)
        for i in range(coeffs.shape[0] - 1, -1, -1):
            inner = inner * s + coeffs[i, j]
        acc = acc * u + inner
    return acc


def h3_from_schur(t: np.ndarray, class_code: int) -> np.ndarray:
    t = np.asarray(t, dtype=complex)
    c = schur_to_c_arrays(t[:, 0], t[:, 1], t[:, 2], t[:, 3])
    return np.asarray(scaled_h3_inverse(*c, "R" if class_code == 0 else "R1"), dtype=complex)


def _step(pss, psu, pus, puu, s, u, fs, fu):
    a = poly_eval(pss, s, u)
    b = poly_eval(psu, s, u)
    c = poly_eval(pus, s, u)
    d = poly_eval(puu, s, u)
    det = a * d - b * c
    singular = np.abs(det) <= 1e-14 * (np.abs(a * d) + np.abs(b * c)) + 1e-300
    with np.errstate(divide="ignore", invalid="ignore"):
        s_new = s - (d * fs - b * fu) / det
        u_new = u - (a * fu - c * fs) / det
    return s_new, u_new, singular


def _residual(ps, pu, s, u, scale):
    fs = poly_eval(ps, s, u)
    fu = poly_eval(pu, s, u)
    return fs, fu, np.maximum(np.abs(fs), np.abs(fu)) / scale


def newton_multistart(ps, pu, pss, psu, pus, puu, s0, u0, maxiter: int, tol: float,
                      scale: float):
    s = np.array(s0, dtype=float)
    u = np.array(u0, dtype=float)
    n = len(s)
    status = np.full(n, FAILED, dtype=np.int8)
    resid = np.full(n, np.inf)
    fs_all = np.zeros(n)
    fu_all = np.zeros(n)
    active = np.ones(n, dtype=bool)
    for it in range(maxiter + 1):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        fs, fu, r = _residual(ps, pu, s[idx], u[idx], scale)
        resid[idx], fs_all[idx], fu_all[idx] = r, fs, fu
        done = r <= tol
        status[idx[done]] = CONVERGED
        active[idx[done]] = False
        if it == maxiter:
            break
        keep = ~done
        idx, fs, fu = idx[keep], fs[keep], fu[keep]
        s_new, u_new, sing = _step(pss, psu, pus, puu, s[idx], u[idx], fs, fu)
        status[idx[sing]] = SINGULAR
        active[idx[sing]] = False
        ok = ~sing
        idx = idx[ok]
        s[idx], u[idx] = s_new[ok], u_new[ok]
        bad = (np.abs(s[idx]) > _DIVERGED) | (np.abs(u[idx]) > _DIVERGED) \
            | ~np.isfinite(s[idx]) | ~np.isfinite(u[idx])
        active[idx[bad]] = False

    # polish converged points while the residual keeps dropping
    polishing = status == CONVERGED
    for _ in range(POLISH_STEPS):
        idx = np.nonzero(polishing)[0]
        if len(idx) == 0:
            break
        s1, u1, sing = _step(pss, psu, pus, puu, s[idx], u[idx], fs_all[idx], fu_all[idx])
        fs1, fu1, r1 = _residual(ps, pu, s1, u1, scale)
        better = ~sing & (r1 < resid[idx])
        j = idx[better]
        s[j], u[j], resid[j] = s1[better], u1[better], r1[better]
        fs_all[j], fu_all[j] = fs1[better], fu1[better]
        polishing[idx[~better]] = False
    return s, u, resid, status
