from fractions import Fraction

import numpy as np
import pytest

import oracles
from invhankel.caratheodory import CaratheodoryCoeffs
from invhankel.classes import (
    ClassCoeffs,
    InverseCoeffs,
    extremal_f0_arctanh,
    extremal_f0_theta,
    extremal_fstar_R1,
    from_caratheodory,
    h3,
    h3_inverse_R,
    h3_inverse_R1,
    h3_of_inverse_series,
    hankel,
    inverse_coeffs,
    r_from_starlike,
    scaled_h3_inverse,
    starlike_from_r,
)
from invhankel.power_series import (
    SeriesDomainError,
    TruncatedSeries,
    derivative,
    reciprocal,
    revert,
)


def _random_c(rng, n=4):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def test_class_maps():
    c = CaratheodoryCoeffs(2, 3, 4, 5)
    assert tuple(from_caratheodory(c, "R")) == (1, 1, 1, 1)
    assert tuple(from_caratheodory(c, "R1")) == (0.5, 3 / 9, 4 / 16, 5 / 25)
    with pytest.raises(ValueError):
        from_caratheodory(c, "S")


def test_class_map_R1_from_series():
    # (z f')' = p  means  n^2 a_n = c_{n-1}
    c = CaratheodoryCoeffs(0.3, -0.1j, 0.7, 0.2 + 0.4j)
    f = from_caratheodory(c, "R1").series(5)
    zf = derivative(f).shift(1)
    p = derivative(zf)
    assert np.allclose(p.coeffs[1:5], list(c))


def test_inverse_coeffs_match_lagrange_oracle():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a = _random_c(rng)
        A = inverse_coeffs(ClassCoeffs(*a))
        want = oracles.lagrange_inverse(np.concatenate([[1], a]), 5)[1:]
        assert np.allclose(list(A), want, atol=1e-12)


def test_inverse_coeffs_from_reversion():
    a = ClassCoeffs(0.2, -0.1j, 0.05, 0.3)
    assert np.allclose(list(InverseCoeffs.from_series(revert(a.series(5)))),
                       list(inverse_coeffs(a)), atol=1e-14)


def test_h3_matches_determinant():
    rng = np.random.default_rng(1)
    for _ in range(50):
        x = _random_c(rng)
        seq = np.concatenate([[1], x])
        assert abs(h3(*x) - oracles.hankel_det(seq, 3, 1)) <= 1e-12 * max(1, abs(h3(*x)))


@pytest.mark.parametrize("q, n", [(1, 3), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_hankel_general(q, n):
    a = _random_c(np.random.default_rng(q * 10 + n), 12)
    assert abs(hankel(q, n, a) - oracles.hankel_det(a, q, n)) <= 1e-10 * max(1, abs(hankel(q, n, a)))


def test_hankel_argument_checks():
    with pytest.raises(ValueError):
        hankel(3, 1, [1, 2, 3, 4])
    with pytest.raises(ValueError):
        hankel(5, 1, list(range(20)))
    with pytest.raises(ValueError):
        hankel(0, 1, [1])


def test_h3_of_plain_sequence():
    assert hankel(3, 1, [1, 0, 0, -0.125, 0]) == pytest.approx(-1 / 64)


@pytest.mark.parametrize("class_id, normalizer", [("R", 8640), ("R1", 74649600)])
def test_closed_forms_match_oracle(class_id, normalizer):
    rng = np.random.default_rng(2)
    fn = h3_inverse_R if class_id == "R" else h3_inverse_R1
    for _ in range(100):
        c = _random_c(rng)
        want = oracles.h3_inverse_oracle(c, class_id)
        got = fn(CaratheodoryCoeffs(*c))
        assert abs(got - want) <= 1e-12 * max(1, abs(want))
        assert complex(scaled_h3_inverse(*c, class_id)) / normalizer == pytest.approx(got, rel=1e-14)


def test_closed_forms_are_exact_on_integers():
    # integer inputs keep the polynomial exact; compare with Fraction arithmetic
    c = (2, -1, 1, 2)
    for class_id, normalizer in (("R", 8640), ("R1", 74649600)):
        n = np.arange(2, 6)
        a = [Fraction(ci, int(k if class_id == "R" else k * k)) for ci, k in zip(c, n)]
        A = inverse_coeffs(ClassCoeffs(*a))
        assert Fraction(scaled_h3_inverse(*c, class_id), normalizer) == h3(*A)


def test_series_route_agrees_with_closed_form():
    c = CaratheodoryCoeffs(0.4, -0.3 + 0.2j, 0.1j, 0.9)
    for class_id, fn in (("R", h3_inverse_R), ("R1", h3_inverse_R1)):
        f = from_caratheodory(c, class_id).series(12)
        assert h3_of_inverse_series(f) == pytest.approx(fn(c), abs=1e-14)


def test_f0_arctanh_coefficients():
    f = extremal_f0_arctanh(30)
    want = [0, 1] + [2 / n if n % 2 else 0 for n in range(2, 31)]
    assert np.allclose(f.coeffs, want, atol=1e-15)


def test_extremal_values():
    assert h3_of_inverse_series(extremal_f0_arctanh()) == pytest.approx(-44 / 135, abs=1e-14)
    assert h3_of_inverse_series(extremal_fstar_R1()) == pytest.approx(-1 / 64, abs=1e-15)


def test_fstar_coefficients():
    f = extremal_fstar_R1(13)
    want = np.zeros(14)
    want[1] = 1
    for n in (4, 7, 10, 13):
        want[n] = 2 / n**2
    assert np.allclose(f.coeffs, want, atol=1e-15)


@pytest.mark.parametrize("theta", [0.0, np.pi / 3, 1.234, -2.5])
def test_f0_theta_coefficient_moduli(theta):
    f = extremal_f0_theta(theta, 30)
    n = np.arange(2, 31)
    assert f[1] == pytest.approx(1)
    assert np.all(np.abs(np.abs(f.coeffs[2:]) - 2 / n) <= 1e-12)
    # a_n = 2 e^{-i(n-1) theta} / n
    assert np.allclose(f.coeffs[2:], 2 * np.exp(-1j * (n - 1) * theta) / n, atol=1e-14)


def test_f0_theta_real_case_values():
    f = extremal_f0_theta(0.0, 10)
    assert abs(f[5]) == pytest.approx(2 / 5, abs=1e-15)
    assert abs(extremal_f0_theta(np.pi / 3, 10)[7]) == pytest.approx(2 / 7, abs=1e-15)


def _koebe(N):
    return TruncatedSeries([0] + list(range(1, N + 1)), N)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_r_from_starlike_series_identity(seed):
    rng = np.random.default_rng(seed)
    g = TruncatedSeries(np.concatenate([[0, 1], 0.3 * _random_c(rng, 29)]))
    f = r_from_starlike(g)
    # f' = z g' / g = g' / (g / z), coefficient by coefficient through order 30
    rhs = derivative(g) * reciprocal(g.shift(-1))
    assert derivative(f).max_abs_diff(rhs) <= 1e-10
    assert derivative(f).order >= 29


def test_r_from_koebe_is_the_half_plane_map():
    # z g'/g = (1+z)/(1-z) for the Koebe function
    f = r_from_starlike(_koebe(30))
    want = [0, 1] + [2 / n for n in range(2, 31)]
    assert np.allclose(f.coeffs[:31], want, atol=1e-12)


def test_starlike_roundtrip():
    rng = np.random.default_rng(4)
    g = TruncatedSeries(np.concatenate([[0, 1], 0.2 * _random_c(rng, 14)]))
    back = starlike_from_r(r_from_starlike(g))
    assert back.max_abs_diff(g) <= 1e-12


def test_correspondence_needs_normalization():
    with pytest.raises(SeriesDomainError):
        r_from_starlike(TruncatedSeries([0, 2, 1]))
    with pytest.raises(SeriesDomainError):
        starlike_from_r(TruncatedSeries([1, 1]))
