import numpy as np
import pytest

import oracles
from invhankel import kernels
from invhankel.caratheodory import (
    CaratheodoryCoeffs,
    HerglotzAtoms,
    SchurParams,
    branch_condition_R,
    branch_condition_R1,
    herglotz_c,
    h3_schur_R,
    h3_schur_R1,
    sample_schur,
    sample_schur_batch,
    scaled_h3_schur_R,
    scaled_h3_schur_R1,
    schur_to_c,
    schur_to_c_arrays,
    toeplitz_matrix,
    toeplitz_min_eig,
)
from invhankel.objectives import build, eval_poly


@pytest.fixture(scope="module")
def schur_rows():
    return np.concatenate([
        sample_schur_batch(11, "uniform", 0, 300),
        sample_schur_batch(11, "boundary-biased", 0, 300),
    ])


def test_schur_params_reject_outside_disk():
    SchurParams(1, 1j, -1, 0.5)
    with pytest.raises(ValueError, match="t3"):
        SchurParams(0, 0, 1.01, 0)


def test_lemma_map_matches_inverse_schur_algorithm(schur_rows):
    for row in schur_rows:
        want = oracles.caratheodory_from_schur(row)[1:]
        got = np.array(list(schur_to_c(SchurParams.from_array(row))))
        assert np.allclose(got, want, atol=1e-13)


def test_lemma_map_first_coefficients_closed_form():
    c = schur_to_c(SchurParams(0.5, 0.25j, 0, 0))
    assert c.c1 == pytest.approx(1.0)
    assert c.c2 == pytest.approx(2 * 0.25 + 2 * 0.75 * 0.25j)


@pytest.mark.parametrize("scaled, normalizer, class_id", [
    (scaled_h3_schur_R, 8640, "R"),
    (scaled_h3_schur_R1, 74649600, "R1"),
])
def test_schur_expansion_matches_oracle(schur_rows, scaled, normalizer, class_id):
    for row in schur_rows:
        want = oracles.h3_inverse_oracle(oracles.caratheodory_from_schur(row)[1:], class_id)
        got = complex(scaled(*row)) / normalizer
        assert abs(got - want) <= 1e-13 * max(1.0, abs(want))


def test_typed_schur_wrappers():
    t = SchurParams(0, 1, 0, 0)
    assert abs(h3_schur_R(t)) == pytest.approx(44 / 135, abs=1e-15)
    assert abs(h3_schur_R1(SchurParams(0, 0, 1, 0))) == pytest.approx(1 / 64, abs=1e-15)


def test_toeplitz_psd_on_lemma_outputs(schur_rows):
    worst = min(toeplitz_min_eig(CaratheodoryCoeffs(*schur_to_c_arrays(*r))) for r in schur_rows)
    assert worst >= -1e-9


def test_toeplitz_detects_nonmember():
    assert toeplitz_min_eig(CaratheodoryCoeffs(3, 0, 0, 0), order=2) < -0.9


def test_toeplitz_matrix_layout_and_order_check():
    T = toeplitz_matrix([1j, 2, 3, 4], order=3)
    assert T[0, 1] == 1j and T[1, 0] == -1j and T[0, 2] == 2
    assert np.allclose(T, T.conj().T)
    with pytest.raises(ValueError):
        toeplitz_matrix([1, 2, 3, 4], order=6)


def test_herglotz_moments_single_atom():
    atoms = HerglotzAtoms((1.0,), (np.exp(0.7j),))
    c = atoms.moments(6)
    assert np.allclose(c, 2 * np.exp(0.7j * np.arange(1, 7)))


def test_herglotz_coefficients_are_members():
    rng = np.random.default_rng(5)
    for _ in range(200):
        c = herglotz_c(HerglotzAtoms.random(rng, int(rng.integers(1, 6))))
        assert max(abs(x) for x in c) <= 2 + 1e-12
        assert toeplitz_min_eig(c) >= -1e-9


def test_herglotz_validation():
    with pytest.raises(ValueError):
        HerglotzAtoms((0.5, 0.6), (1, -1))
    with pytest.raises(ValueError):
        HerglotzAtoms((1.0,), (0.5,))
    with pytest.raises(ValueError):
        HerglotzAtoms((), ())


def test_sampling_is_random_access():
    batch = sample_schur_batch(9, "boundary-biased", 0, 50)
    for i in (0, 7, 49):
        assert tuple(sample_schur(9, "boundary-biased", i)) == tuple(batch[i])
    tail = sample_schur_batch(9, "boundary-biased", 20, 30)
    assert np.array_equal(tail, batch[20:])


def test_sampling_depends_on_seed_and_mode():
    a = sample_schur_batch(1, "uniform", 0, 10)
    assert not np.array_equal(a, sample_schur_batch(2, "uniform", 0, 10))
    assert not np.array_equal(a, sample_schur_batch(1, "boundary-biased", 0, 10))
    with pytest.raises(ValueError):
        sample_schur_batch(1, "gaussian", 0, 10)


def test_uniform_sampling_fills_the_disk():
    t = sample_schur_batch(4, "uniform", 0, 200_000)
    r2 = np.abs(t) ** 2
    # |t|^2 is uniform on [0, 1] for the area measure
    assert abs(r2.mean() - 0.5) < 5e-3
    assert np.all(np.abs(t) <= 1)


def test_boundary_bias_snaps_a_quarter_each_way():
    t = sample_schur_batch(4, "boundary-biased", 0, 200_000)
    r = np.abs(t)
    assert abs(np.mean(r == 0) - 0.25) < 5e-3
    assert abs(np.mean(np.abs(r - 1) < 1e-15) - 0.25) < 5e-3


@pytest.mark.parametrize("class_id, code, cond, names", [
    ("R", 0, branch_condition_R, ("g", "g1")),
    ("R1", 1, branch_condition_R1, ("h", "h1")),
])
def test_branch_condition_selects_a_valid_bound(class_id, code, cond, names):
    t = sample_schur_batch(5, "boundary-biased", 0, 20_000)
    scaled = np.abs(kernels.h3_from_schur(t, code))
    s, u = np.abs(t[:, 0]), np.abs(t[:, 1])
    first = np.array([cond(a, b) >= 0 for a, b in t[:, :2]])
    A, B = (eval_poly(build(n), s, u) for n in names)
    chosen = np.where(first, A, B)
    other = np.where(first, B, A)
    assert np.all(scaled <= chosen + 1e-9 * np.maximum(1, chosen))
    # the other branch is not a bound everywhere, so the selection matters
    assert np.any(scaled > other * (1 + 1e-6))
