import os
import subprocess
import sys

import numpy as np
import pytest

from invhankel import kernels
from invhankel.caratheodory import sample_schur_batch, scaled_h3_schur_R, scaled_h3_schur_R1
from invhankel.objectives import build, eval_poly, grad

IMPLS = kernels.implementations()
needs_both = pytest.mark.skipif("cython" not in IMPLS, reason="compiled extension not built")


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in IMPLS


def test_pure_python_env_switch():
    env = dict(os.environ, INVHANKEL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import invhankel; print(invhankel.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_poly_eval_matches_exact(name):
    impl = IMPLS[name]
    p = build("h1")
    s = np.linspace(0, 1, 9)
    u = np.linspace(0.2, 0.9, 9)
    got = impl.poly_eval(p.coeffs.astype(float), s, u)
    want = [float(eval_poly(p, float(a), float(b))) for a, b in zip(s, u)]
    assert np.allclose(got, want, rtol=1e-13, atol=1e-7)


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_h3_from_schur_matches_expansion(name):
    t = sample_schur_batch(3, "boundary-biased", 0, 2000)
    for code, ref in ((0, scaled_h3_schur_R), (1, scaled_h3_schur_R1)):
        got = IMPLS[name].h3_from_schur(t, code)
        want = ref(*t.T)
        assert np.allclose(got, want, rtol=1e-12, atol=1e-12 * np.abs(want).max())


def _newton(impl, which, seeds):
    p = build(which)
    ps, pu = grad(p)
    pss, psu = grad(ps)
    pus, puu = grad(pu)
    scale = float(max(np.abs(ps.coeffs).max(), np.abs(pu.coeffs).max()))
    f = lambda q: q.coeffs.astype(float)  # noqa: E731
    return impl.newton_multistart(f(ps), f(pu), f(pss), f(psu), f(pus), f(puu),
                                  seeds[:, 0], seeds[:, 1], 50, 1e-10, scale)


@needs_both
@pytest.mark.parametrize("which", ["g", "h1"])
def test_newton_backends_agree(which):
    rng = np.random.default_rng(0)
    seeds = rng.uniform(-0.1, 1.1, size=(500, 2))
    s1, u1, r1, st1 = _newton(IMPLS["cython"], which, seeds)
    s2, u2, r2, st2 = _newton(IMPLS["python"], which, seeds)
    assert np.array_equal(st1, st2)
    ok = st1 == kernels.CONVERGED
    assert ok.sum() > 0
    assert np.allclose(s1[ok], s2[ok], atol=1e-12)
    assert np.allclose(u1[ok], u2[ok], atol=1e-12)
    assert np.all(r1[ok] <= 1e-10) and np.all(r2[ok] <= 1e-10)


@needs_both
def test_h3_backends_agree():
    t = sample_schur_batch(8, "uniform", 0, 5000)
    for code in (0, 1):
        a = IMPLS["cython"].h3_from_schur(t, code)
        b = IMPLS["python"].h3_from_schur(t, code)
        assert np.allclose(a, b, rtol=1e-13, atol=1e-9)


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_newton_converges_from_exact_root(name):
    s, u, r, st = _newton(IMPLS[name], "g", np.array([[0.0, 0.0]]))
    assert st[0] == kernels.CONVERGED
    assert (s[0], u[0], r[0]) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_newton_flags_singular_jacobian(name):
    # gradient (1, 1) is never zero and the Hessian vanishes
    one = np.array([[1.0]])
    zero = np.array([[0.0]])
    s, u, r, st = IMPLS[name].newton_multistart(one, one, zero, zero, zero, zero,
                                                np.array([0.3]), np.array([0.6]), 50, 1e-10, 1.0)
    assert st[0] == kernels.SINGULAR
    assert (s[0], u[0]) == (0.3, 0.6)
