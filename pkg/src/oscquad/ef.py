"""
Pure exponentially fitted Gauss rules for int_{-1}^{1} f(x) exp(i w x) dx.

A nu-point rule with antisymmetric nodes and symmetric weights is fixed by

    H_0(w) = 2 sin w - w sum_k w_k cos(w c_k) = 0,
    H_i(w) = d^i H_0 / dw^i                  = 0,   i = 1..nu-1,

which makes it exact for x^m exp(+-i w x), m < nu.  The system is
solved on the branch that starts at the Gauss-Legendre rule for w = 0
(the classical curve), by numerical continuation in w with a damped
Newton corrector.  The branch is tabulated once per nu and later
queries interpolate the table and polish with Newton.
"""

from __future__ import annotations

import bisect
import csv
import math
import threading
from dataclasses import dataclass

import numpy as np

from .gauss import legendre_rule

__all__ = [
    "EFRule",
    "EFConvergenceError",
    "ef_residual",
    "solve_ef",
    "ef_quadrature",
    "dump_branch_csv",
]

MAX_NU = 4
RESIDUAL_TOL = 1e-10

_FINE_STEP = 0.1
_FINE_END = 10.0
_GROWTH = 1.05
_MIN_STEP = 1e-6
_MAX_JUMP = 0.25  # largest accepted corrector move in scaled node units


class EFConvergenceError(RuntimeError):
    """Newton/continuation gave up; ``last_omega`` is the last converged frequency."""

    def __init__(self, nu, omega, last_omega, message=""):
        self.nu = nu
        self.omega = omega
        self.last_omega = last_omega
        super().__init__(
            message
            or f"EF rule nu={nu} did not converge at omega={omega:g} "
            f"(branch followed up to omega={last_omega:g})"
        )


@dataclass(frozen=True)
class EFRule:
    nu: int
    omega: float
    nodes: np.ndarray
    weights: np.ndarray
    residual_norm: float


def _dcos(theta, j):
    # j-th derivative of cos, evaluated at theta
    return np.cos(theta + j * (math.pi / 2))


def _pow(c, e):
    if e < 0:
        return np.zeros_like(c)
    return c**e


def ef_residual(nu, omega, nodes, weights):
    """
    H_0..H_{nu-1} for a full (length-nu) node and weight vector.

    The omega-derivatives are taken analytically: the i-th derivative of
    w cos(w c) is w c^i cos^(i)(w c) + i c^(i-1) cos^(i-1)(w c).
    """
    c = np.asarray(nodes, dtype=float)
    wt = np.asarray(weights, dtype=float)
    theta = omega * c
    H = np.empty(nu)
    for i in range(nu):
        term = omega * _pow(c, i) * _dcos(theta, i)
        if i:
            term = term + i * _pow(c, i - 1) * _dcos(theta, i - 1)
        H[i] = 2.0 * math.sin(omega + i * math.pi / 2) - np.dot(wt, term)
    return H


def _jacobian_full(nu, omega, c, wt):
    """dH/dc_k and dH/dw_k for the full node/weight vectors."""
    theta = omega * c
    Jc = np.empty((nu, c.size))
    Jw = np.empty((nu, c.size))
    for i in range(nu):
        g = omega * _pow(c, i) * _dcos(theta, i)
        dg = omega * (i * _pow(c, i - 1) * _dcos(theta, i) + omega * _pow(c, i) * _dcos(theta, i + 1))
        if i:
            g = g + i * _pow(c, i - 1) * _dcos(theta, i - 1)
            dg = dg + i * ((i - 1) * _pow(c, i - 2) * _dcos(theta, i - 1) + omega * _pow(c, i - 1) * _dcos(theta, i))
        Jw[i] = -g
        Jc[i] = -wt * dg
    return Jc, Jw


# -- reduced parametrisation ------------------------------------------------
# free parameters: positive nodes (ascending), then the weights belonging to
# them, then the centre weight when nu is odd.


def _expand(nu, p):
    h = nu // 2
    pos = p[:h]
    wpos = p[h:2 * h]
    if nu % 2:
        c = np.concatenate([-pos[::-1], [0.0], pos])
        w = np.concatenate([wpos[::-1], [p[2 * h]], wpos])
    else:
        c = np.concatenate([-pos[::-1], pos])
        w = np.concatenate([wpos[::-1], wpos])
    return c, w


def _reduce(nu, c, w):
    h = nu // 2
    p = np.concatenate([c[nu - h:], w[nu - h:]])
    if nu % 2:
        p = np.append(p, w[h])
    return p


def _system(nu, omega, p):
    c, w = _expand(nu, p)
    H = ef_residual(nu, omega, c, w)
    Jc, Jw = _jacobian_full(nu, omega, c, w)
    h = nu // 2
    odd = nu % 2
    J = np.empty((nu, nu))
    for j in range(h):
        kpos = h + odd + j
        kneg = h - 1 - j
        J[:, j] = Jc[:, kpos] - Jc[:, kneg]
        J[:, h + j] = Jw[:, kpos] + Jw[:, kneg]
    if odd:
        J[:, 2 * h] = Jw[:, h]
    return H, J


def _newton(nu, omega, p0, maxiter=50):
    p = np.array(p0, dtype=float)
    H, J = _system(nu, omega, p)
    r = np.max(np.abs(H))
    floor = 4e-16 * max(1.0, omega)
    for _ in range(maxiter):
        if r <= floor:
            break
        try:
            dp = np.linalg.lstsq(J, -H, rcond=None)[0]
        except np.linalg.LinAlgError:
            return p, r, False
        lam = 1.0
        while lam > 1e-4:
            trial = p + lam * dp
            Ht, Jt = _system(nu, omega, trial)
            rt = np.max(np.abs(Ht))
            if rt < r or rt <= floor:
                break
            lam *= 0.5
        else:
            break
        step = np.max(np.abs(lam * dp))
        p, H, J, r = trial, Ht, Jt, rt
        if step < 1e-15 * max(1.0, np.max(np.abs(p))):
            break
    return p, r, r <= min(RESIDUAL_TOL, max(1e-12, 20 * floor))


def _scaled(omega, nu, p):
    # nodes -> w(1-c), weights -> w*weight; both stay O(1) along the branch
    h = nu // 2
    q = p.copy()
    q[:h] = omega * (1.0 - p[:h])
    q[h:] = omega * p[h:]
    return q


def _unscaled(omega, nu, q):
    h = nu // 2
    p = q.copy()
    p[:h] = 1.0 - q[:h] / omega
    p[h:] = q[h:] / omega
    return p


def _admissible(nu, p):
    h = nu // 2
    pos = p[:h]
    if np.any(pos <= 0) or np.any(pos > 1.0 + 1e-12):
        return False
    return bool(np.all(np.diff(pos) > 0))


class _Branch:
    """Lazily extended table of the classical curve for one nu."""

    def __init__(self, nu):
        self.nu = nu
        r = legendre_rule(nu)
        self.omegas = [0.0]
        self.params = [_reduce(nu, r.nodes, r.weights)]
        self.failed_at = None
        self.lock = threading.Lock()

    def _next_grid(self, w):
        if w < _FINE_END - 1e-12:
            return round(w + _FINE_STEP, 10)
        return w * _GROWTH

    def _predict(self, w_new):
        nu = self.nu
        if len(self.omegas) == 1:
            return self.params[0].copy()
        w1, w0 = self.omegas[-1], self.omegas[-2]
        q1 = _scaled(w1, nu, self.params[-1])
        q0 = _scaled(w0, nu, self.params[-2])
        if w0 == 0.0:
            return self.params[-1].copy()
        q = q1 + (q1 - q0) * (w_new - w1) / (w1 - w0)
        return _unscaled(w_new, nu, q)

    def _step_to(self, w_target):
        w_last = self.omegas[-1]
        step = w_target - w_last
        while True:
            w_try = w_last + step
            p0 = self._predict(w_try)
            p, r, ok = _newton(self.nu, w_try, p0)
            if ok and _admissible(self.nu, p):
                jump = np.max(np.abs(_scaled(w_try, self.nu, p) - _scaled(w_try, self.nu, p0)))
                if w_try <= _FINE_END:
                    jump = np.max(np.abs(p - p0)) * max(1.0, w_try)
                if jump < _MAX_JUMP:
                    self.omegas.append(w_try)
                    self.params.append(p)
                    if w_try >= w_target - 1e-14:
                        return True
                    w_last = w_try
                    step = w_target - w_last
                    continue
            step *= 0.5
            if step < _MIN_STEP:
                return False

    def extend(self, omega):
        while self.omegas[-1] < omega:
            if self.failed_at is not None:
                return False
            target = self._next_grid(self.omegas[-1])
            if not self._step_to(target):
                self.failed_at = target
                return False
        return True

    def lookup(self, omega):
        with self.lock:
            if not self.extend(omega):
                raise EFConvergenceError(self.nu, omega, self.omegas[-1])
            i = bisect.bisect_left(self.omegas, omega)
            if self.omegas[i] == omega:
                return self.params[i].copy()
            wa, wb = self.omegas[i - 1], self.omegas[i]
            t = (omega - wa) / (wb - wa)
            if wa == 0.0:
                return (1 - t) * self.params[i - 1] + t * self.params[i]
            qa = _scaled(wa, self.nu, self.params[i - 1])
            qb = _scaled(wb, self.nu, self.params[i])
            return _unscaled(omega, self.nu, (1 - t) * qa + t * qb)

    def bracket(self, omega):
        with self.lock:
            i = bisect.bisect_left(self.omegas, omega)
            return self.omegas[i - 1], self.params[i - 1].copy()


_BRANCHES = {}
_BRANCHES_LOCK = threading.Lock()


def _branch(nu):
    with _BRANCHES_LOCK:
        if nu not in _BRANCHES:
            _BRANCHES[nu] = _Branch(nu)
        return _BRANCHES[nu]


def _rule_from_params(nu, omega, p):
    c, w = _expand(nu, p)
    r = float(np.max(np.abs(ef_residual(nu, omega, c, w))))
    return EFRule(nu, float(omega), c, w, r)


def solve_ef(nu, omega):
    """
    Pure EF rule with ``nu`` points on the classical branch.

    Parameters
    ----------
    nu : int
        1, 2, 3 or 4.
    omega : float
        Frequency, >= 0.

    Raises
    ------
    EFConvergenceError
        If the branch cannot be followed up to ``omega``.
    """
    if nu not in range(1, MAX_NU + 1):
        raise ValueError(f"nu must be in 1..{MAX_NU}, got {nu!r}")
    omega = float(omega)
    if not (omega >= 0 and math.isfinite(omega)):
        raise ValueError(f"omega must be finite and >= 0, got {omega!r}")
    if nu == 1:
        w = 2.0 * math.sin(omega) / omega if omega else 2.0
        return _rule_from_params(1, omega, np.array([w]))
    if omega == 0.0:
        r = legendre_rule(nu)
        return EFRule(nu, 0.0, r.nodes.copy(), r.weights.copy(), 0.0)

    br = _branch(nu)
    p0 = br.lookup(omega)
    p, r, ok = _newton(nu, omega, p0)
    if not (ok and _admissible(nu, p)):
        # short local continuation from the table point below omega
        w_lo, p_lo = br.bracket(omega)
        p, ok = p_lo, True
        for w in np.linspace(w_lo, omega, 9)[1:]:
            p, r, ok = _newton(nu, w, p)
            if not ok:
                break
        if not (ok and _admissible(nu, p)):
            raise EFConvergenceError(nu, omega, w_lo, f"Newton polish failed at omega={omega:g}")
    return _rule_from_params(nu, omega, p)


def ef_quadrature(rule, f):
    """sum_k w_k f(c_k) exp(i w c_k)."""
    c = rule.nodes
    return complex(np.sum(rule.weights * np.asarray(f(c)) * np.exp(1j * rule.omega * c)))


def dump_branch_csv(nu, omegas, path):
    """CSV rows (omega, c_1..c_nu, w_1..w_nu) along the classical branch."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["omega"] + [f"c{k}" for k in range(1, nu + 1)] + [f"w{k}" for k in range(1, nu + 1)])
        for w in omegas:
            rule = solve_ef(nu, w)
            writer.writerow([repr(float(w))] + [repr(float(x)) for x in rule.nodes] + [repr(float(x)) for x in rule.weights])
