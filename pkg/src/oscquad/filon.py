"""
Filon-type rules on arbitrary (possibly complex) node sets.

f is replaced by its interpolant p(x) = sum_j a_j x^j through the nodes
and p(x) exp(i w x) is integrated exactly with the power moments.  The
power basis is ill-conditioned for many or tightly clustered nodes; the
interpolation residual is available through ``interpolation_residual``
so that the loss of accuracy stays visible.  For more than about six
nodes use :mod:`oscquad.fcc` instead.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .moments import power_moments

__all__ = [
    "Integrand",
    "analytic",
    "ComplexNodeSet",
    "PolyCoeffs",
    "lagrange_coeffs",
    "interpolation_residual",
    "filon_rule",
    "closed_form_Q2FC",
]

MIN_SEPARATION = 1e-13


@dataclass(frozen=True)
class Integrand:
    """A callable tagged with whether it may be evaluated off the real axis."""

    func: Callable
    complex_ok: bool = False

    def __call__(self, x):
        return self.func(x)


def analytic(func):
    """Mark ``func`` as safe to evaluate at complex arguments."""
    if isinstance(func, Integrand):
        return Integrand(func.func, True)
    return Integrand(func, True)


def _require_complex_ok(f, nodes):
    if np.any(np.asarray(nodes).imag != 0) and not getattr(f, "complex_ok", False):
        raise ValueError(
            "complex interpolation nodes need an integrand marked complex_ok "
            "(wrap it with oscquad.analytic)"
        )


@dataclass(frozen=True)
class ComplexNodeSet:
    """Interpolation nodes together with the family/frequency that produced them."""

    nodes: np.ndarray
    family: str = "custom"
    omega: float = 0.0

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.nodes, dtype=complex))
        if c.size == 0:
            raise ValueError("node set is empty")
        if c.size > 1:
            gaps = np.abs(c[:, None] - c[None, :])
            gaps[np.diag_indices(c.size)] = np.inf
            if gaps.min() <= MIN_SEPARATION:
                raise ValueError(f"nodes must be distinct (min separation {gaps.min():.3g})")
        object.__setattr__(self, "nodes", c)

    def __len__(self):
        return self.nodes.size

    @property
    def is_real(self):
        return bool(np.all(self.nodes.imag == 0))


@dataclass(frozen=True)
class PolyCoeffs:
    """Power-basis coefficients a_0..a_{nu-1}."""

    coeffs: np.ndarray
    nodes: np.ndarray = field(repr=False, default=None)

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)


def _as_nodes(nodes):
    return nodes if isinstance(nodes, ComplexNodeSet) else ComplexNodeSet(nodes)


def lagrange_coeffs(nodes, values):
    """
    Power-basis coefficients of the polynomial interpolating ``values``.

    Built from the Newton divided-difference form, then expanded into
    powers of x by Horner-style nested multiplication.
    """
    ns = _as_nodes(nodes)
    c = ns.nodes
    v = np.asarray(values, dtype=complex)
    if v.shape != c.shape:
        raise ValueError(f"got {v.size} values for {c.size} nodes")
    n = c.size
    dd = v.copy()
    for j in range(1, n):
        dd[j:] = (dd[j:] - dd[j - 1:-1]) / (c[j:] - c[:-j])
    # p(x) = dd0 + (x-c0)(dd1 + (x-c1)(dd2 + ...))
    a = np.zeros(n, dtype=complex)
    a[0] = dd[n - 1]
    deg = 0
    for j in range(n - 2, -1, -1):
        # a <- a*(x - c_j) + dd_j
        a[1:deg + 2] = a[:deg + 1] - c[j] * a[1:deg + 2]
        a[0] = -c[j] * a[0] + dd[j]
        deg += 1
    return PolyCoeffs(a, c)


def interpolation_residual(poly, values):
    """max_l |p(c_l) - f(c_l)| / max(1, max |f(c_l)|)."""
    v = np.asarray(values, dtype=complex)
    r = np.abs(poly(poly.nodes) - v).max()
    return float(r / max(1.0, np.abs(v).max()))


def filon_rule(nodes, f, omega):
    """
    Filon quadrature: sum_j a_j mu_j(omega).

    ``f`` is evaluated exactly once at every node.  Complex node sets
    require ``f`` to be an :class:`Integrand` with ``complex_ok``.
    """
    ns = _as_nodes(nodes)
    _require_complex_ok(f, ns.nodes)
    x = ns.nodes if not ns.is_real else ns.nodes.real
    values = np.asarray(f(x), dtype=complex)
    poly = lagrange_coeffs(ns, values)
    mu = power_moments(len(ns) - 1, omega).values
    return complex(np.dot(poly.coeffs, mu))


def closed_form_Q2FC(f, omega):
    """Two-point complex Filon rule i[e^{-iw} f(-1+i/w) - e^{iw} f(1+i/w)]/w."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if not getattr(f, "complex_ok", False):
        raise ValueError("closed_form_Q2FC evaluates f off the real axis; mark it complex_ok")
    s = 1j / omega
    left = complex(f(-1.0 + s))
    right = complex(f(1.0 + s))
    return 1j * (cmath.exp(-1j * omega) * left - cmath.exp(1j * omega) * right) / omega
