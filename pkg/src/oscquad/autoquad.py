"""
Automatic integration of f(x) exp(i w x) over [a, b].

The interval is mapped to [-1, 1]; the rule of :mod:`oscquad.fcc` is
then applied with n = 3, 5, 9, ... Chebyshev points (nested, so every
refinement only samples the n-1 new points) until two successive
approximations agree to within ``tol``.
"""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .fcc import chebyshev_points, fcc_from_samples
from .filon import _require_complex_ok
from .moments import cheb_moments
from .nodes import family_nodes, guard_nodes

__all__ = ["IntegrandSpec", "AutoResult", "to_reference", "auto_integrate", "MAX_POINTS"]

log = logging.getLogger(__name__)

MAX_POINTS = 4097

DEFAULT_FAMILY = {0: None, 2: "FA2", 4: "FA4"}


@dataclass(frozen=True)
class IntegrandSpec:
    """
    f on [a, b] with oscillator exp(i omega x).

    ``reference`` returns the exact integral for a given omega when known;
    ``endpoint_derivatives`` lists (f^(m)(a), f^(m)(b)) for m = 0, 1, ...
    """

    f: Callable
    a: float = -1.0
    b: float = 1.0
    omega: float = 0.0
    reference: Optional[Callable[[float], complex]] = None
    endpoint_derivatives: Optional[Sequence[tuple]] = None
    complex_ok: bool = False

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"need a < b, got [{self.a}, {self.b}]")
        if self.omega < 0:
            raise ValueError("omega must be >= 0")

    @property
    def integrand(self):
        f = self.f
        if self.complex_ok and not getattr(f, "complex_ok", False):
            from .filon import analytic

            f = analytic(f)
        return f


@dataclass(frozen=True)
class AutoResult:
    value: complex
    n_it: int
    n_fev: int
    est_error: float
    converged: bool
    coarse_value: complex = 0j
    n_points: int = 0


class _Mapped:
    def __init__(self, f, a, b):
        self.f = f
        self.half = 0.5 * (b - a)
        self.mid = 0.5 * (b + a)
        self.complex_ok = getattr(f, "complex_ok", False)

    def __call__(self, t):
        return self.f(self.half * np.asarray(t) + self.mid)


def to_reference(spec):
    """
    (omega_hat, prefactor, g) with
    int_a^b f e^{i w x} dx = prefactor * int_{-1}^{1} g e^{i omega_hat t} dt.
    """
    a, b, w = float(spec.a), float(spec.b), float(spec.omega)
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    omega_hat = 0.5 * (b - a) * w
    prefactor = 0.5 * (b - a) * cmath.exp(0.5j * w * (b + a))
    if a == -1.0 and b == 1.0:
        return omega_hat, prefactor, spec.integrand
    return omega_hat, prefactor, _Mapped(spec.integrand, a, b)


def auto_integrate(spec, nu=2, tol=1e-9, family=None, max_points=MAX_POINTS):
    """
    Tolerance-driven Filon-Clenshaw-Curtis integration.

    Parameters
    ----------
    spec : IntegrandSpec
    nu : {0, 2, 4}
        Number of frequency-dependent nodes added to the Chebyshev grid.
    tol : float
        Absolute tolerance on the integral over [a, b].
    family : str, optional
        Node family for the extra nodes; FA2/FA4 by default.

    Returns
    -------
    AutoResult
        ``value`` is the finer of the last two approximations and
        ``coarse_value`` the coarser one; ``converged`` is False when
        ``max_points`` was reached first.
    """
    if nu not in (0, 2, 4):
        raise ValueError(f"nu must be 0, 2 or 4, got {nu!r}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    omega_hat, pref, g = to_reference(spec)
    scale = abs(pref)

    if nu:
        fam = family or DEFAULT_FAMILY[nu]
        if omega_hat == 0.0 and fam.startswith("FC"):
            raise ValueError(f"family {fam} is undefined at omega = 0")
        extra = family_nodes(fam, omega_hat)
        if len(extra) != nu:
            raise ValueError(f"family {fam} has {len(extra)} nodes, expected {nu}")
        _require_complex_ok(g, extra.nodes)
        arg = extra.nodes if not extra.is_real else extra.nodes.real
        f_extra = np.asarray(g(arg), dtype=complex)
    else:
        extra, f_extra = None, None
    n_fev = nu

    tau = None
    tau_len = 0

    def rule(values):
        nonlocal tau, tau_len, n_fev
        n = len(values)
        if tau_len < n + nu:
            tau_len = 2 * n + nu
            tau = cheb_moments(tau_len - 1, omega_hat).values
        if nu == 0:
            return fcc_from_samples(values, None, None, omega_hat, tau)
        ns = guard_nodes(extra, chebyshev_points(n))
        if ns is not extra:
            # a nudged node needs its own sample
            fc = np.asarray(g(ns.nodes if not ns.is_real else ns.nodes.real), dtype=complex)
            n_fev += nu
            return fcc_from_samples(values, ns, fc, omega_hat, tau)
        return fcc_from_samples(values, extra, f_extra, omega_hat, tau)

    n = 3
    values = np.asarray(g(chebyshev_points(n)), dtype=complex)
    n_fev += n
    A1 = rule(values)
    n_it = 0
    while True:
        m = 2 * n - 1
        new = np.empty(m, dtype=complex)
        new[0::2] = values
        # odd-indexed points of the finer grid are the only new ones
        new[1::2] = np.asarray(g(chebyshev_points(m)[1::2]), dtype=complex)
        n_fev += n - 1
        values, n = new, m
        A2 = rule(values)
        n_it += 1
        est = abs(A1 - A2) * scale
        log.debug("n=%d  |A1-A2|=%.3e", n, est)
        if est < tol:
            return AutoResult(pref * A2, n_it, n_fev, est, True, pref * A1, n)
        if 2 * n - 1 > max_points:
            return AutoResult(pref * A2, n_it, n_fev, est, False, pref * A1, n)
        A1 = A2
