import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oscquad import gauss_oscillatory, legendre_rule


def test_midpoint():
    r = legendre_rule(1)
    np.testing.assert_array_equal(r.nodes, [0.0])
    np.testing.assert_array_equal(r.weights, [2.0])


def test_two_points():
    np.testing.assert_allclose(legendre_rule(2).nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)


def test_three_points():
    assert abs(legendre_rule(3).nodes[-1] - math.sqrt(3 / 5)) < 1e-15


@pytest.mark.parametrize("nu", [1, 2, 5, 8, 17, 33, 64])
def test_matches_numpy(nu):
    x, w = np.polynomial.legendre.leggauss(nu)
    r = legendre_rule(nu)
    np.testing.assert_allclose(r.nodes, x, atol=1e-14)
    np.testing.assert_allclose(r.weights, w, atol=1e-14)


@pytest.mark.parametrize("nu", range(1, 9))
def test_symmetry(nu):
    r = legendre_rule(nu)
    np.testing.assert_array_equal(r.nodes, -r.nodes[::-1])
    np.testing.assert_array_equal(r.weights, r.weights[::-1])


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=2**31))
def test_polynomial_exactness(nu, seed):
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal(2 * nu)
    poly = np.polynomial.Polynomial(coef)
    exact = poly.integ()(1) - poly.integ()(-1)
    assert abs(gauss_oscillatory(legendre_rule(nu), poly, 0.0) - exact) <= 1e-12 * (1 + np.abs(coef).sum())


@pytest.mark.parametrize("nu", [1, 3, 6])
def test_constant_at_zero_frequency(nu):
    assert abs(gauss_oscillatory(legendre_rule(nu), lambda x: np.ones_like(x), 0.0) - 2) < 1e-14


def test_exp_at_zero_frequency():
    # classical remainder 2^(2n+1) (n!)^4 / ((2n+1) ((2n)!)^3) f^(2n)(xi), xi in (-1, 1)
    n = 5
    k = 2 ** (2 * n + 1) * math.factorial(n) ** 4 / ((2 * n + 1) * math.factorial(2 * n) ** 3)
    err = (math.e - 1 / math.e) - gauss_oscillatory(legendre_rule(n), np.exp, 0.0).real
    assert k / math.e <= err <= k * math.e


def test_exp_at_zero_frequency_many_points():
    assert abs(gauss_oscillatory(legendre_rule(8), np.exp, 0.0) - (math.e - 1 / math.e)) < 1e-14


def test_zero_frequency_is_plain_gauss():
    r = legendre_rule(6)
    f = lambda x: np.cos(3 * x) + x**2  # noqa: E731
    assert abs(gauss_oscillatory(r, f, 0.0) - np.dot(r.weights, f(r.nodes))) < 1e-15


def test_error_does_not_decay_at_high_frequency():
    exact = lambda w: (np.exp(1 + 1j * w) - np.exp(-1 - 1j * w)) / (1 + 1j * w)  # noqa: E731
    err = abs(gauss_oscillatory(legendre_rule(8), np.exp, 50.0) - exact(50.0))
    assert err > 1e-2


@pytest.mark.parametrize("nu", [0, 65, 2.5])
def test_bad_nu(nu):
    with pytest.raises(ValueError):
        legendre_rule(nu)
