import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oscquad import ComplexNodeSet, Integrand, analytic, closed_form_Q2FC, filon_rule, lagrange_coeffs, power_moments
from oscquad.bench import PROBLEMS, estimate_order, sweep
from oscquad.filon import interpolation_residual

EXP = analytic(np.exp)
EXACT = PROBLEMS["exp_on_unit"].exact


def test_constant_through_endpoints():
    np.testing.assert_allclose(lagrange_coeffs([-1.0, 1.0], [1.0, 1.0]).coeffs, [1, 0], atol=1e-16)


def test_line_through_legendre_points():
    c = 1 / math.sqrt(3)
    a = lagrange_coeffs([-c, c], [0.0, 2 * c]).coeffs
    np.testing.assert_allclose(a, [c, 1.0], atol=1e-15)


def _closed_a0(c, v):
    return sum(v[l] * np.prod([-c[j] / (c[l] - c[j]) for j in range(len(c)) if j != l]) for l in range(len(c)))


def _closed_top(c, v):
    return sum(v[l] / np.prod([c[l] - c[j] for j in range(len(c)) if j != l]) for l in range(len(c)))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=2**31))
def test_first_and_last_coefficient_closed_forms(nu, seed):
    rng = np.random.default_rng(seed)
    c = rng.uniform(-1, 1, nu) + 1j * rng.uniform(0, 0.3, nu)
    v = rng.standard_normal(nu) + 1j * rng.standard_normal(nu)
    a = lagrange_coeffs(c, v).coeffs
    assert abs(a[0] - _closed_a0(c, v)) <= 1e-9 * (1 + abs(a[0]))
    assert abs(a[-1] - _closed_top(c, v)) <= 1e-9 * (1 + abs(a[-1]))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2**31))
def test_interpolation_identity(nu, seed):
    rng = np.random.default_rng(seed)
    c = np.sort(rng.uniform(-1, 1, nu))
    if nu > 1 and np.min(np.diff(c)) < 1e-3:
        return
    v = rng.standard_normal(nu)
    p = lagrange_coeffs(c, v)
    assert interpolation_residual(p, v) <= 1e-9


def test_clustered_six_nodes_residual_is_reported():
    w = 1e3
    c = np.array([-1 + 0.5 / w, -1 + 2 / w, -0.3, 0.3, 1 - 2 / w, 1 - 0.5 / w])
    p = lagrange_coeffs(c, np.exp(c))
    r = interpolation_residual(p, np.exp(c))
    assert np.isfinite(r) and r < 1e-6


@pytest.mark.parametrize("w", [0.0, 0.5, 10.0, 500.0])
@pytest.mark.parametrize("nu", [1, 2, 3, 4])
def test_polynomial_exactness(nu, w):
    rng = np.random.default_rng(nu)
    coef = rng.standard_normal(nu)
    f = np.polynomial.Polynomial(coef)
    nodes = np.linspace(-0.9, 0.8, nu)
    exact = np.dot(coef, power_moments(nu - 1, w).values)
    assert abs(filon_rule(nodes, f, w) - exact) <= 1e-11 * (1 + abs(exact))


def test_linear_in_f():
    nodes = ComplexNodeSet([-0.7, 0.1, 0.9])
    f, g = np.sin, np.exp
    lhs = filon_rule(nodes, lambda x: 2 * f(x) - 3 * g(x), 17.0)
    rhs = 2 * filon_rule(nodes, f, 17.0) - 3 * filon_rule(nodes, g, 17.0)
    assert abs(lhs - rhs) < 1e-13


def test_lobatto_second_order():
    err = abs(filon_rule([-1.0, 1.0], np.exp, 100.0) - EXACT(100.0))
    assert err * 100.0**2 < 10
    slope, _ = estimate_order(sweep("Q2_Lobatto", "exp_on_unit", np.geomspace(1e2, 1e4, 601)))
    assert abs(slope + 2) <= 0.25


def test_complex_nodes_match_closed_form():
    w = 100.0
    nodes = ComplexNodeSet([-1 + 1j / w, 1 + 1j / w])
    assert abs(filon_rule(nodes, EXP, w) - closed_form_Q2FC(EXP, w)) < 1e-12


def test_closed_form_constant_at_pi():
    one = analytic(lambda x: 1.0)
    assert abs(closed_form_Q2FC(one, math.pi)) < 1e-15


def test_closed_form_third_order():
    for w in (100.0, 1000.0):
        assert abs(closed_form_Q2FC(EXP, w) - EXACT(w)) * w**3 < 20


def test_closed_form_matches_generic_at_10():
    nodes = ComplexNodeSet([-1 + 0.1j, 1 + 0.1j])
    assert abs(closed_form_Q2FC(EXP, 10.0) - filon_rule(nodes, EXP, 10.0)) < 1e-12


def test_complex_nodes_need_marked_integrand():
    with pytest.raises(ValueError):
        filon_rule(ComplexNodeSet([-1 + 0.1j, 1 + 0.1j]), np.exp, 10.0)
    with pytest.raises(ValueError):
        closed_form_Q2FC(np.exp, 10.0)


def test_closed_form_needs_positive_omega():
    with pytest.raises(ValueError):
        closed_form_Q2FC(EXP, 0.0)


def test_node_set_validation():
    with pytest.raises(ValueError):
        ComplexNodeSet([0.1, 0.1])
    with pytest.raises(ValueError):
        ComplexNodeSet([])
    assert ComplexNodeSet([0.1, 0.2]).is_real
    assert not ComplexNodeSet([0.1, 0.2j]).is_real


def test_value_count_mismatch():
    with pytest.raises(ValueError):
        lagrange_coeffs([0.0, 1.0], [1.0])


def test_f_evaluated_once_per_node():
    calls = []

    def f(x):
        calls.append(np.size(x))
        return np.exp(x)

    filon_rule([-0.5, 0.0, 0.5], f, 3.0)
    assert sum(calls) == 3


def test_analytic_wrapper():
    g = analytic(np.exp)
    assert isinstance(g, Integrand) and g.complex_ok
    assert analytic(g).complex_ok
    assert g(0.0) == 1.0
