import random

import numpy as np
import pytest

from fhdet.errors import PoleError
from fhdet.fh_symbol import (
    Params,
    ToeplitzSpec,
    coefficient_sequence,
    fourier_coefficient,
    strip_alternating_sign,
    toeplitz_matrix,
)
from fhdet.determinants import lu_det
from fhdet.verify import sample_real_params

from conftest import binomial_series_coefficients


def test_trivial_symbol():
    p = Params(0, 0)
    assert fourier_coefficient(p, 0) == 1.0
    for k in (-5, -1, 1, 2, 9):
        assert fourier_coefficient(p, k) == 0.0


def test_one_minus_z():
    p = Params(1, 0)
    assert fourier_coefficient(p, 0) == pytest.approx(1.0, rel=1e-15)
    assert fourier_coefficient(p, 1) == pytest.approx(-1.0, rel=1e-15)
    for k in (-3, -1, 2, 3):
        assert fourier_coefficient(p, k) == 0.0


def test_second_difference_symbol():
    p = Params(1, 1)
    assert fourier_coefficient(p, 0) == pytest.approx(2.0, rel=1e-15)
    assert fourier_coefficient(p, 1) == pytest.approx(-1.0, rel=1e-15)
    assert fourier_coefficient(p, -1) == pytest.approx(-1.0, rel=1e-15)
    assert fourier_coefficient(p, 2) == 0.0


@pytest.mark.parametrize("a,b", [(0, 3), (2, 1), (3, 4), (5, 0), (4, 4)])
def test_integer_exponents_match_binomial_expansion(a, b):
    ref = binomial_series_coefficients(a, b, 8)
    spec = coefficient_sequence(Params(a, b), 9)
    for k, v in ref.items():
        assert fourier_coefficient(Params(a, b), k) == pytest.approx(v, rel=1e-13, abs=0)
        assert spec.phi(k) == pytest.approx(v, rel=1e-13, abs=0)


def test_leading_pole():
    with pytest.raises(PoleError):
        fourier_coefficient(Params(-0.5, -0.5), 0)
    with pytest.raises(PoleError):
        coefficient_sequence(Params(-1.25, -0.75), 4)


def test_sequences():
    assert list(coefficient_sequence(Params(0, 0), 3).coeffs) == [0, 0, 1, 0, 0]
    np.testing.assert_allclose(coefficient_sequence(Params(1, 1), 2).coeffs, [-1, 2, -1], rtol=1e-15)


def test_ratio_half_half():
    spec = coefficient_sequence(Params(0.5, 0.5), 4)
    assert spec.phi(1) / spec.phi(0) == pytest.approx(-1 / 3, rel=1e-14)
    direct = fourier_coefficient(Params(0.5, 0.5), 1) / fourier_coefficient(Params(0.5, 0.5), 0)
    assert direct == pytest.approx(-1 / 3, rel=1e-14)


def test_spec_validation():
    with pytest.raises(ValueError):
        ToeplitzSpec(3, np.zeros(4))
    spec = coefficient_sequence(Params(0.3, 0.2), 3)
    with pytest.raises(ValueError):
        spec.coeffs[0] = 1.0


def test_toeplitz_layout():
    assert np.array_equal(toeplitz_matrix(coefficient_sequence(Params(0, 0), 6)), np.eye(6))
    np.testing.assert_allclose(
        toeplitz_matrix(coefficient_sequence(Params(1, 1), 3)),
        [[2, -1, 0], [-1, 2, -1], [0, -1, 2]], rtol=1e-15, atol=0)
    spec = coefficient_sequence(Params(0.7, 1.9), 1)
    assert toeplitz_matrix(spec).shape == (1, 1)
    assert toeplitz_matrix(spec)[0, 0] == spec.phi(0)
    spec = coefficient_sequence(Params(0.3, 1.1), 5)
    t = toeplitz_matrix(spec)
    for i in range(5):
        for j in range(5):
            assert t[i, j] == spec.phi(i - j)


def test_recurrence_vs_direct():
    r = random.Random(9)
    for _ in range(200):
        p = sample_real_params(r, 1)
        spec = coefficient_sequence(p, 65)
        for k in range(-64, 65):
            d = fourier_coefficient(p, k)
            got = spec.phi(k)
            assert got == d or abs(got - d) <= 1e-12 * abs(d), (p, k)


@pytest.mark.parametrize("beta", [-3.0, -3.0 + 1e-13])
def test_recurrence_falls_back_at_its_own_zeros(beta):
    # 1/Gamma(beta+1+k) vanishes for k <= 2, so phi_0 = 0 and the upward
    # recurrence would stay stuck at zero without the direct fallback
    p = Params(0.4, beta)
    spec = coefficient_sequence(p, 8)
    for k in range(-7, 8):
        assert spec.phi(k) == pytest.approx(fourier_coefficient(p, k), rel=1e-12, abs=0)
    assert spec.phi(0) == 0.0 and spec.phi(2) == 0.0
    assert spec.phi(3) != 0.0


def test_recurrence_keeps_polynomial_zeros():
    spec = coefficient_sequence(Params(2.0, 0.6), 10)
    assert all(spec.phi(k) == 0.0 for k in range(3, 10))
    assert spec.phi(2) != 0.0


def test_swap_symmetry():
    r = random.Random(1)
    for _ in range(100):
        p = sample_real_params(r, 1)
        for k in range(-20, 21):
            a = fourier_coefficient(p, k)
            b = fourier_coefficient(p.swapped(), -k)
            assert a == b or abs(a - b) <= 1e-13 * abs(a)


def test_swap_gives_transpose():
    p = Params(0.35, 1.8)
    t = toeplitz_matrix(coefficient_sequence(p, 7))
    ts = toeplitz_matrix(coefficient_sequence(p.swapped(), 7))
    np.testing.assert_allclose(ts, t.T, rtol=1e-13, atol=0)


def test_sign_factor_irrelevant():
    r = random.Random(2)
    for _ in range(50):
        n = r.randint(1, 40)
        p = sample_real_params(r, n)
        spec = coefficient_sequence(p, n)
        a = lu_det(toeplitz_matrix(spec))
        b = lu_det(toeplitz_matrix(strip_alternating_sign(spec)))
        assert a.sign == b.sign
        assert abs(a.logmag - b.logmag) <= 1e-10
