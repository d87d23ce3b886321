# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: polynomial evaluation, Newton multistart, batch H_3."""

import numpy as np

from libc.math cimport fabs, isfinite

cdef double DIVERGED = 1e3

cdef int CONVERGED = 0
cdef int SINGULAR = 1
cdef int FAILED = 2
cdef int POLISH_STEPS = 3


cdef inline double _horner(const double[:, ::1] c, double s, double u) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0, inner
    for j in range(c.shape[1] - 1, -1, -1):
        inner = 0.0
        for i in range(c.shape[0] - 1, -1, -1):
            inner = inner * s + c[i, j]
        acc = acc * u + inner
    return acc


cdef inline bint _step(const double[:, ::1] css, const double[:, ::1] csu,
                       const double[:, ::1] cus, const double[:, ::1] cuu,
                       double fs, double fu, double* s, double* u) noexcept nogil:
    """One Newton step in place; returns True when the Jacobian is singular."""
    cdef double a = _horner(css, s[0], u[0])
    cdef double b = _horner(csu, s[0], u[0])
    cdef double c = _horner(cus, s[0], u[0])
    cdef double d = _horner(cuu, s[0], u[0])
    cdef double det = a * d - b * c
    if fabs(det) <= 1e-14 * (fabs(a * d) + fabs(b * c)) + 1e-300:
        return True
    s[0] = s[0] - (d * fs - b * fu) / det
    u[0] = u[0] - (a * fu - c * fs) / det
    return False


def poly_eval(coeffs, s, u):
    cdef const double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef const double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t k, n = sv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for k in range(n):
            ov[k] = _horner(c, sv[k], uv[k])
    return out


def newton_multistart(ps, pu, pss, psu, pus, puu, s0, u0, int maxiter, double tol,
                      double scale):
    cdef const double[:, ::1] cps = np.ascontiguousarray(ps, dtype=np.float64)
    cdef const double[:, ::1] cpu = np.ascontiguousarray(pu, dtype=np.float64)
    cdef const double[:, ::1] css = np.ascontiguousarray(pss, dtype=np.float64)
    cdef const double[:, ::1] csu = np.ascontiguousarray(psu, dtype=np.float64)
    cdef const double[:, ::1] cus = np.ascontiguousarray(pus, dtype=np.float64)
    cdef const double[:, ::1] cuu = np.ascontiguousarray(puu, dtype=np.float64)
    s_out = np.array(s0, dtype=np.float64)
    u_out = np.array(u0, dtype=np.float64)
    cdef Py_ssize_t k, n = s_out.shape[0]
    resid = np.full(n, np.inf)
    status = np.full(n, FAILED, dtype=np.int8)
    cdef double[::1] sv = s_out
    cdef double[::1] uv = u_out
    cdef double[::1] rv = resid
    cdef signed char[::1] st = status
    cdef int it
    cdef double s, u, fs, fu, r, s1, u1, fs1, fu1, r1
    with nogil:
        for k in range(n):
            s = sv[k]
            u = uv[k]
            for it in range(maxiter + 1):
                fs = _horner(cps, s, u)
                fu = _horner(cpu, s, u)
                r = (fabs(fs) if fabs(fs) > fabs(fu) else fabs(fu)) / scale
                rv[k] = r
                if r <= tol:
                    st[k] = CONVERGED
                    break
                if it == maxiter:
                    break
                if _step(css, csu, cus, cuu, fs, fu, &s, &u):
                    st[k] = SINGULAR
                    break
                if fabs(s) > DIVERGED or fabs(u) > DIVERGED or not isfinite(s) or not isfinite(u):
                    break
            if st[k] == CONVERGED:
                # polish: a few more steps, kept only while the residual drops
                for it in range(POLISH_STEPS):
                    s1 = s
                    u1 = u
                    if _step(css, csu, cus, cuu, fs, fu, &s1, &u1):
                        break
                    fs1 = _horner(cps, s1, u1)
                    fu1 = _horner(cpu, s1, u1)
                    r1 = (fabs(fs1) if fabs(fs1) > fabs(fu1) else fabs(fu1)) / scale
                    if not r1 < r:
                        break
                    s, u, fs, fu, r = s1, u1, fs1, fu1, r1
                rv[k] = r
            sv[k] = s
            uv[k] = u
    return s_out, u_out, resid, status


cdef inline double complex _sq(double complex z) noexcept nogil:
    return z * z


def h3_from_schur(t, int class_code):
    """Normalizer times H_3(1)(f^{-1}) for each row ``(t1, t2, t3, t4)`` of ``t``."""
    cdef const double complex[:, ::1] tv = np.ascontiguousarray(t, dtype=np.complex128)
    cdef Py_ssize_t k, n = tv.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex t1, t2, t3, t4, b1, b2, c1, c2, c3, c4, c1sq, c1p4
    cdef double a1, a2, a3, m1
    with nogil:
        for k in range(n):
            t1 = tv[k, 0]
            t2 = tv[k, 1]
            t3 = tv[k, 2]
            t4 = tv[k, 3]
            m1 = t1.real * t1.real + t1.imag * t1.imag
            a1 = 1 - m1
            a2 = 1 - (t2.real * t2.real + t2.imag * t2.imag)
            a3 = 1 - (t3.real * t3.real + t3.imag * t3.imag)
            b1 = t1.conjugate()
            b2 = t2.conjugate()
            c1 = 2 * t1
            c2 = 2 * _sq(t1) + 2 * a1 * t2
            c3 = (2 * _sq(t1) * t1 + 4 * a1 * t1 * t2 - 2 * a1 * b1 * _sq(t2)
                  + 2 * a1 * a2 * t3)
            c4 = (2 * _sq(_sq(t1))
                  + 2 * a1 * (3 * _sq(t1) + _sq(b1) * _sq(t2) - 3 * m1 * t2 + t2) * t2
                  + 2 * a1 * a2 * (2 * t1 - 2 * b1 * t2 - b2 * t3) * t3
                  + 2 * a1 * a2 * a3 * t4)
            c1sq = _sq(c1)
            c1p4 = _sq(c1sq)
            if class_code == 0:
                ov[k] = (-540 * c1p4 * c2 - 432 * c1sq * c4 + 720 * c1sq * _sq(c2)
                         + 576 * c2 * c4 - 540 * _sq(c3) + 720 * c1 * c2 * c3
                         + 135 * c1p4 * c1sq - 640 * _sq(c2) * c2)
            else:
                ov[k] = (-97200 * c1p4 * c2 - 186624 * c1sq * c4 + 172800 * c1sq * _sq(c2)
                         + 331776 * c2 * c4 - 291600 * _sq(c3) + 18225 * c1p4 * c1sq
                         + 259200 * c1 * c2 * c3 - 204800 * _sq(c2) * c2)
    return out
