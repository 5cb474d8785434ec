import cmath
import math

import numpy as np
import pytest

from oscquad import IntegrandSpec, analytic, auto_integrate, to_reference
from oscquad.bench import PROBLEMS, TABLE1_OMEGAS, table1_replay
from oscquad.fcc import chebyshev_points

EXP5 = PROBLEMS["exp_on_5"]


class Recorder:
    """Integrand that logs every abscissa it sees."""

    complex_ok = True

    def __init__(self):
        self.seen = []

    def __call__(self, x):
        x = np.atleast_1d(x)
        self.seen.extend(np.asarray(x).tolist())
        return np.exp(x)


def test_identity_transform():
    f = analytic(np.exp)
    w_hat, pref, g = to_reference(IntegrandSpec(f, -1, 1, 7.0))
    assert (w_hat, pref) == (7.0, 1)
    assert g is f


def test_prob10_transform():
    w = 100.0
    spec = IntegrandSpec(analytic(np.exp), 0.0, 0.1, w)
    w_hat, pref, g = to_reference(spec)
    t, wt = np.polynomial.legendre.leggauss(40)
    approx = pref * np.sum(wt * g(t) * np.exp(1j * w_hat * t))
    exact = (-1 + cmath.exp((1 + 1j * w) / 10)) / (1 + 1j * w)
    assert abs(approx - exact) < 1e-14


def test_scaled_frequency():
    assert to_reference(IntegrandSpec(np.exp, -5, 5, 10.0))[0] == 50.0


def test_spec_validation():
    with pytest.raises(ValueError):
        IntegrandSpec(np.exp, 1, 1)
    with pytest.raises(ValueError):
        IntegrandSpec(np.exp, -1, 1, -2.0)


@pytest.mark.parametrize("w,nu,n_it,n_fev", [(100.0, 2, 4, 35), (5000.0, 4, 1, 9)])
def test_table_examples(w, nu, n_it, n_fev):
    res = auto_integrate(EXP5.at(w), nu, 1e-9)
    assert (res.n_it, res.n_fev) == (n_it, n_fev)
    assert abs(res.value - EXP5.exact(w)) <= 1e-9


@pytest.mark.parametrize("nu", [0, 2, 4])
def test_huge_tolerance_stops_after_one_comparison(nu):
    res = auto_integrate(EXP5.at(100.0), nu, 1e10)
    assert (res.n_it, res.n_fev) == (1, nu + 5)


@pytest.mark.parametrize("nu", [0, 2, 4])
@pytest.mark.parametrize("w", [10.0, 500.0])
def test_every_sample_taken_once(nu, w):
    rec = Recorder()
    spec = IntegrandSpec(rec, -5, 5, w, complex_ok=True)
    res = auto_integrate(spec, nu, 1e-9)
    assert len(rec.seen) == res.n_fev
    real = [x for x in rec.seen if isinstance(x, float)]
    assert len(real) == len(set(real))
    # n_fev = nu + n_final, where the final grid has 2^(n_it+1) + 1 points
    assert res.n_fev == nu + 2 ** (res.n_it + 1) + 1 == nu + res.n_points


def test_coarse_value_and_estimate():
    res = auto_integrate(EXP5.at(100.0), 2, 1e-9)
    assert res.est_error == pytest.approx(abs(res.value - res.coarse_value))
    assert res.converged


@pytest.mark.parametrize("nu", [0, 2, 4])
def test_iterations_non_increasing_in_omega(nu):
    its = [auto_integrate(EXP5.at(w), nu, 1e-9).n_it for w in TABLE1_OMEGAS]
    assert all(a >= b for a, b in zip(its, its[1:]))


def test_cap_reports_non_convergence():
    res = auto_integrate(EXP5.at(33.0), 2, 1e-300)
    assert not res.converged
    assert res.n_points <= 4097
    assert abs(res.value - EXP5.exact(33.0)) < 1e-12


def test_small_cap():
    res = auto_integrate(EXP5.at(200.0), 0, 1e-12, max_points=9)
    assert not res.converged and res.n_points == 9


def test_other_family():
    res = auto_integrate(EXP5.at(1000.0), 2, 1e-9, family="FCC-C2")
    assert res.converged and abs(res.value - EXP5.exact(1000.0)) <= 1e-9


def test_zero_frequency():
    res = auto_integrate(IntegrandSpec(np.exp, 0, 2), 2, 1e-12)
    assert abs(res.value - (math.e**2 - 1)) < 1e-12


@pytest.mark.parametrize("kwargs", [dict(nu=1), dict(nu=3), dict(tol=0.0), dict(tol=-1.0)])
def test_bad_arguments(kwargs):
    args = dict(nu=2, tol=1e-9) | kwargs
    with pytest.raises(ValueError):
        auto_integrate(EXP5.at(10.0), **args)


def test_complex_family_needs_analytic_integrand():
    with pytest.raises(ValueError):
        auto_integrate(IntegrandSpec(np.exp, -1, 1, 50.0), 2, 1e-9, family="FC2")


def test_table1_rows():
    rows = {(r["omega"], r["nu"]): r for r in table1_replay(1e-9)}
    assert len(rows) == 15
    assert (rows[500.0, 4]["n_it"], rows[500.0, 4]["n_fev"]) == (1, 9)
    assert rows[500.0, 4]["error"] <= 1e-9
    assert (rows[10.0, 0]["n_it"], rows[10.0, 0]["n_fev"]) == (5, 65)
    assert (rows[1000.0, 2]["n_it"], rows[1000.0, 2]["n_fev"]) == (3, 19)
    assert all(r["error"] <= 1e-9 for r in rows.values())


def test_nesting_used_by_refinement():
    x3, x5 = chebyshev_points(3), chebyshev_points(5)
    assert set(np.round(x3, 15)) <= set(np.round(x5, 15))
