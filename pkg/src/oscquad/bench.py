"""
Benchmark harness: registered test problems and rules, frequency sweeps,
asymptotic-order estimation and the automatic-scheme table replay.
"""

from __future__ import annotations

import cmath
import math
import os
import re
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np
from scipy import stats

from .autoquad import IntegrandSpec, auto_integrate, to_reference
from .ef import ef_quadrature, solve_ef
from .fcc import fcc_quadrature
from .filon import ComplexNodeSet, analytic, filon_rule
from .gauss import gauss_oscillatory, legendre_rule
from .nodes import nodes_FA, nodes_FC, nodes_FCA, nodes_FCC_C2

__all__ = [
    "Problem",
    "SweepRecord",
    "PROBLEMS",
    "get_problem",
    "get_rule",
    "rule_order",
    "panel_gauss",
    "apply_rule",
    "sweep",
    "envelope",
    "estimate_order",
    "asy_expansion",
    "table1_replay",
    "TABLE1_OMEGAS",
]

ORACLE_ENV = "OSCQUAD_ORACLE_PANELS_PER_OMEGA"


# -- reference values ---------------------------------------------------------


def _oracle_density():
    raw = os.environ.get(ORACLE_ENV)
    if raw is None:
        return 0.5
    try:
        val = float(raw)
    except ValueError:
        raise ValueError(f"{ORACLE_ENV} must be a number, got {raw!r}") from None
    if not val > 0:
        raise ValueError(f"{ORACLE_ENV} must be positive")
    return val


def panel_gauss(f, a, b, omega, panels=None, order=16):
    """
    Composite Gauss-Legendre value of int_a^b f(x) exp(i omega x) dx.

    Independent of the package's own Gauss rules (numpy's leggauss).  The
    default panel count is max(32, density * omega (b-a)/2), density from
    OSCQUAD_ORACLE_PANELS_PER_OMEGA (0.5 when unset).  Abscissae and phases
    are formed in long double so that large omega*x keeps its accuracy.
    """
    if panels is None:
        panels = max(32, math.ceil(_oracle_density() * abs(omega) * (b - a) / 2))
    x, w = np.polynomial.legendre.leggauss(order)
    ld = np.longdouble
    edges = ld(a) + (ld(b) - ld(a)) * np.arange(panels + 1, dtype=ld) / panels
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    X = (mid[:, None] + half[:, None] * x[None, :].astype(ld)).ravel()
    W = (half[:, None] * w[None, :].astype(ld)).ravel()
    theta = ld(omega) * X
    fx = np.asarray(f(X))
    if not np.iscomplexobj(fx):
        fx = fx.astype(ld)
    vals = W * fx * (np.cos(theta) + 1j * np.sin(theta))
    re = np.asarray(vals.real, dtype=ld)
    im = np.asarray(vals.imag, dtype=ld)
    return complex(float(np.sum(np.sort(re))), float(np.sum(np.sort(im))))


@dataclass(frozen=True)
class Problem:
    id: str
    spec: IntegrandSpec
    exact: Callable[[float], complex]

    def at(self, omega):
        s = self.spec
        return IntegrandSpec(s.f, s.a, s.b, omega, s.reference, s.endpoint_derivatives, s.complex_ok)


def _exp_exact(a, b):
    def exact(omega):
        z = 1.0 + 1j * omega
        return (cmath.exp(z * b) - cmath.exp(z * a)) / z

    return exact


def _exp_problem(pid, a, b):
    derivs = lambda m: (math.exp(a), math.exp(b))  # noqa: E731
    exact = _exp_exact(a, b)
    spec = IntegrandSpec(analytic(np.exp), a, b, 0.0, exact, derivs, True)
    return Problem(pid, spec, exact)


def _one_exact(omega):
    return 2.0 * math.sin(omega) / omega if omega else 2.0


def _rational_f(x):
    return 1.0 / (2.0 + np.asarray(x))


def _rational_exact(omega):
    return panel_gauss(_rational_f, -1.0, 1.0, omega)


def _rational_derivs(m):
    # d^m/dx^m (2+x)^-1 = (-1)^m m! (2+x)^-(m+1)
    c = (-1) ** m * math.factorial(m)
    return (c * 1.0 ** -(m + 1), c * 3.0 ** -(m + 1))


PROBLEMS = {
    p.id: p
    for p in [
        _exp_problem("exp_on_unit", -1.0, 1.0),
        _exp_problem("exp_prob10", 0.0, 0.1),
        _exp_problem("exp_on_5", -5.0, 5.0),
        Problem(
            "one",
            IntegrandSpec(analytic(lambda x: np.ones_like(np.asarray(x), dtype=complex)), -1.0, 1.0, 0.0,
                          _one_exact, lambda m: (1.0, 1.0) if m == 0 else (0.0, 0.0), True),
            _one_exact,
        ),
        Problem(
            "rational",
            IntegrandSpec(analytic(_rational_f), -1.0, 1.0, 0.0, None, _rational_derivs, True),
            _rational_exact,
        ),
    ]
}


def get_problem(pid):
    try:
        return PROBLEMS[pid]
    except KeyError:
        raise ValueError(f"unknown problem {pid!r}; known: {sorted(PROBLEMS)}") from None


# -- rules on the reference interval -----------------------------------------
# every rule maps (g, omega_hat) -> approximation of int_{-1}^{1} g e^{i omega_hat t} dt


def _ef_rule(nu):
    def rule(g, w):
        return ef_quadrature(solve_ef(nu, w), g)

    return rule


def _fixed_filon(nodes, name):
    ns = ComplexNodeSet(np.asarray(nodes, dtype=float), name)

    def rule(g, w):
        return filon_rule(ns, g, w)

    return rule


def _gauss_rule(nu):
    r = legendre_rule(nu)
    return lambda g, w: gauss_oscillatory(r, g, w)


def _fcc_rule(nu, n, family=None):
    def rule(g, w):
        if nu == 0:
            extra = None
        elif family == "C2":
            extra = nodes_FCC_C2(w)
        elif nu == 2:
            extra = nodes_FA(2, w)
        else:
            extra = nodes_FA(4, w)
        return fcc_quadrature(g, n, extra, w)

    return rule


_STATIC_RULES = {
    "Q1_EF": (_ef_rule(1), 1),
    "Q2_EF": (_ef_rule(2), 2),
    "Q3_EF": (_ef_rule(3), 2),
    "Q4_EF": (_ef_rule(4), 3),
    "Q2_FA": (lambda g, w: filon_rule(nodes_FA(2, w), g, w), 2),
    "Q3_FA": (lambda g, w: filon_rule(nodes_FA(3, w), g, w), 2),
    "Q4_FA": (lambda g, w: filon_rule(nodes_FA(4, w), g, w), 3),
    "Q2_FC": (lambda g, w: filon_rule(nodes_FC(2, w), g, w), 3),
    "Q3_FC": (lambda g, w: filon_rule(nodes_FC(3, w), g, w), 3),
    "Q4_FC": (lambda g, w: filon_rule(nodes_FC(4, w), g, w), 5),
    "Q2_FCA": (lambda g, w: filon_rule(nodes_FCA(w), g, w), 3),
    "Q2_Legendre": (_fixed_filon([-1 / math.sqrt(3), 1 / math.sqrt(3)], "Legendre"), 1),
    "Q2_Lobatto": (_fixed_filon([-1.0, 1.0], "Lobatto"), 2),
    "Q3_Legendre": (_fixed_filon([-math.sqrt(0.6), 0.0, math.sqrt(0.6)], "Legendre"), 1),
    "Q3_Lobatto": (_fixed_filon([-1.0, 0.0, 1.0], "Lobatto"), 2),
}

_DYNAMIC = [
    (re.compile(r"^gauss_(\d+)$"), lambda m: (_gauss_rule(int(m[1])), 0)),
    (re.compile(r"^FCC_([024])_(\d+)$"), lambda m: (_fcc_rule(int(m[1]), int(m[2])), {0: 2, 2: 3, 4: 4}[int(m[1])])),
    (re.compile(r"^FCC_C2_(\d+)$"), lambda m: (_fcc_rule(2, int(m[1]), "C2"), 4)),
    (re.compile(r"^(Q\d_\w+?)_x(\d+)$"), None),
]


def get_rule(rule_id):
    """(callable(g, omega_hat), declared asymptotic order, subdivisions)."""
    if rule_id in _STATIC_RULES:
        rule, order = _STATIC_RULES[rule_id]
        return rule, order, 1
    for pattern, build in _DYNAMIC:
        m = pattern.match(rule_id)
        if not m:
            continue
        if build is None:
            base, order, _ = get_rule(m[1])
            pieces = int(m[2])
            if pieces < 1:
                break
            return base, order, pieces
        if rule_id.startswith("gauss_") and not 1 <= int(m[1]) <= 64:
            break
        if rule_id.startswith("FCC") and int(m[m.lastindex]) < 2:
            break
        rule, order = build(m)
        return rule, order, 1
    raise ValueError(
        f"unknown rule {rule_id!r}; known: {sorted(_STATIC_RULES)} plus gauss_<nu>, "
        "FCC_<0|2|4>_<n>, FCC_C2_<n> and <rule>_x<pieces>"
    )


def rule_order(rule_id):
    return get_rule(rule_id)[1]


class _Counter:
    def __init__(self, f):
        self.f = f
        self.count = 0
        self.complex_ok = getattr(f, "complex_ok", False)

    def __call__(self, x):
        self.count += int(np.size(x))
        return self.f(x)


def apply_rule(rule_id, spec):
    """Apply a registered rule to ``spec`` on [a, b]; returns (value, n_fev)."""
    rule, _, pieces = get_rule(rule_id)
    counter = _Counter(spec.integrand)
    edges = np.linspace(spec.a, spec.b, pieces + 1)
    total = 0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        sub = IntegrandSpec(counter, float(lo), float(hi), spec.omega, complex_ok=spec.complex_ok)
        w_hat, pref, g = to_reference(sub)
        total += pref * rule(g, w_hat)
    return complex(total), counter.count


# -- sweeps and order estimation ------------------------------------------------


@dataclass(frozen=True)
class SweepRecord:
    rule_id: str
    omega: float
    abs_error: float
    normalized_error: float
    n_fev: int


def sweep(rule_id, problem_id, omegas):
    """One record per omega, errors against the problem's exact value."""
    problem = get_problem(problem_id)
    order = rule_order(rule_id)
    records = []
    for w in omegas:
        w = float(w)
        value, nfev = apply_rule(rule_id, problem.at(w))
        err = abs(value - problem.exact(w))
        records.append(SweepRecord(rule_id, w, err, w**order * err, nfev))
    return sorted(records, key=lambda r: (r.rule_id, r.omega))


def envelope(records, windows_per_decade=10):
    """
    (omega, error) at the maximum error inside each logarithmic window.

    Error curves touch zero near particular frequencies, so fitting the
    raw samples would be meaningless; the window maxima track the
    envelope instead.
    """
    w = np.array([r.omega for r in records], dtype=float)
    e = np.array([r.abs_error for r in records], dtype=float)
    keep = (w > 0) & (e > 0)
    w, e = w[keep], e[keep]
    if w.size == 0:
        return np.empty(0), np.empty(0)
    lw = np.log10(w)
    lo, hi = lw.min(), lw.max()
    nwin = max(1, int(math.ceil((hi - lo) * windows_per_decade)))
    edges = np.linspace(lo, hi, nwin + 1)
    idx = np.clip(np.searchsorted(edges, lw, side="right") - 1, 0, nwin - 1)
    ew, ee = [], []
    for k in range(nwin):
        sel = np.nonzero(idx == k)[0]
        if sel.size == 0:
            continue
        j = sel[np.argmax(e[sel])]
        ew.append(w[j])
        ee.append(e[j])
    return np.array(ew), np.array(ee)


def estimate_order(records, windows_per_decade=10, min_decades=1.5):
    """
    Least-squares slope of log(envelope error) against log(omega).

    ``min_decades`` is the smallest accepted omega span (in decades).

    Returns
    -------
    (slope, ci)
        ci is the 95% half-width of the slope.
    """
    records = list(records)
    if len(records) < 8:
        raise ValueError(f"need at least 8 records, got {len(records)}")
    w = np.array([r.omega for r in records])
    if w.min() <= 0 or math.log10(w.max() / w.min()) < min_decades - 1e-12:
        raise ValueError(f"records must span at least {min_decades} decades of omega")
    ew, ee = envelope(records, windows_per_decade)
    if ew.size < 3:
        raise ValueError("too few non-zero errors to fit a slope")
    fit = stats.linregress(np.log10(ew), np.log10(ee))
    t = stats.t.ppf(0.975, ew.size - 2)
    return float(fit.slope), float(t * fit.stderr)


def asy_expansion(problem, omega, M):
    """
    Partial sum of the endpoint asymptotic expansion

        -sum_{m<M} (-i w)^-(m+1) [e^{iw} g^(m)(1) - e^{-iw} g^(m)(-1)]

    of the problem mapped to [-1, 1], returned for the original interval.
    """
    if M < 0:
        raise ValueError("M must be >= 0")
    spec = problem.spec if isinstance(problem, Problem) else problem
    if M == 0:
        return 0j
    derivs = spec.endpoint_derivatives
    if derivs is None:
        raise ValueError("problem has no endpoint derivatives")
    half = 0.5 * (spec.b - spec.a)
    w_hat, pref, _ = to_reference(IntegrandSpec(spec.f, spec.a, spec.b, omega))
    total = 0j
    for m in range(M):
        if callable(derivs):
            left, right = derivs(m)
        else:
            if m >= len(derivs):
                raise ValueError(f"derivative of order {m} not supplied")
            left, right = derivs[m]
        scale = half**m
        total -= (cmath.exp(1j * w_hat) * right - cmath.exp(-1j * w_hat) * left) * scale / (-1j * w_hat) ** (m + 1)
    return pref * total


# -- automatic scheme table ---------------------------------------------------------

TABLE1_OMEGAS = (10.0, 100.0, 500.0, 1000.0, 5000.0)


def table1_replay(tol=1e-9, omegas=TABLE1_OMEGAS, nus=(0, 2, 4)):
    """Automatic scheme on int_{-5}^{5} e^x e^{i w x} dx; one row per (omega, nu)."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    problem = PROBLEMS["exp_on_5"]
    rows = []
    for w in omegas:
        exact = problem.exact(w)
        for nu in nus:
            res = auto_integrate(problem.at(w), nu, tol)
            rows.append(
                dict(
                    omega=w,
                    nu=nu,
                    error=abs(res.value - exact),
                    coarse_error=abs(res.coarse_value - exact),
                    n_it=res.n_it,
                    n_fev=res.n_fev,
                    converged=res.converged,
                )
            )
    return rows


def records_as_dicts(records):
    return [asdict(r) for r in records]
