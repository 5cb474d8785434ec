"""
Filon-Clenshaw-Curtis rules with extra frequency-dependent nodes.

The integrand is interpolated at the n Chebyshev extrema
x_j = cos(j pi/(n-1)) (giving p1) and at nu extra nodes c.  The extra
nodes enter through a correction

    p3 = (x^2 - 1) T'_{n-1}(x) p2(x) = (n-1)/2 (T_n - T_{n-2}) p2(x),

which vanishes on the Chebyshev grid, with p2 interpolating
g = (f - p1) / ((x^2 - 1) T'_{n-1}) at c.  Everything stays in the
Chebyshev basis; the quadrature is sum_k tau_k (p1 + p3)_k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .filon import ComplexNodeSet, _require_complex_ok
from .moments import cheb_moments
from .nodes import guard_nodes

__all__ = [
    "ChebyshevExpansion",
    "FCCRule",
    "chebyshev_points",
    "cheb_coeffs_from_values",
    "cheb_interpolate",
    "build_correction",
    "fcc_quadrature",
    "fcc_from_samples",
]


@dataclass(frozen=True)
class ChebyshevExpansion:
    """sum_k coeffs[k] T_k(x)."""

    coeffs: np.ndarray

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        # Clenshaw
        x = np.asarray(x)
        c = self.coeffs
        b1 = np.zeros_like(x, dtype=np.result_type(x, c))
        b2 = np.zeros_like(b1)
        for ck in c[:0:-1]:
            b1, b2 = 2 * x * b1 - b2 + ck, b1
        return x * b1 - b2 + c[0]

    def padded(self, length):
        out = np.zeros(length, dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def __add__(self, other):
        m = max(len(self.coeffs), len(other.coeffs))
        return ChebyshevExpansion(self.padded(m) + other.padded(m))


@dataclass(frozen=True)
class FCCRule:
    n: int
    nu: int
    extra_nodes: ComplexNodeSet
    omega: float

    @property
    def points(self):
        return chebyshev_points(self.n)


def chebyshev_points(n):
    """Chebyshev extrema cos(j pi/(n-1)), j = 0..n-1 (descending from 1)."""
    if n < 2:
        raise ValueError(f"need n >= 2 Chebyshev points, got {n}")
    x = np.cos(np.pi * np.arange(n) / (n - 1))
    # exact symmetry, exact zero at the centre
    x = 0.5 * (x - x[::-1])
    return x


def cheb_coeffs_from_values(values):
    """Coefficients of the interpolant through values at chebyshev_points(n), via DCT-I."""
    v = np.asarray(values)
    n = v.size
    if n < 2:
        raise ValueError("need at least two samples")
    if np.iscomplexobj(v):
        a = dct(v.real, type=1) + 1j * dct(v.imag, type=1)
    else:
        a = dct(v, type=1).astype(complex)
    a /= n - 1
    a[0] *= 0.5
    a[-1] *= 0.5
    return ChebyshevExpansion(a)


def cheb_interpolate(f, n):
    """Degree n-1 Chebyshev interpolant of f (n evaluations)."""
    x = chebyshev_points(n)
    return cheb_coeffs_from_values(np.asarray(f(x), dtype=complex))


def _cheb_T(k, x):
    e = np.zeros(k + 1)
    e[k] = 1.0
    return ChebyshevExpansion(e)(x)


def _p2_nu2(c, g):
    c1, c2 = c
    g1, g2 = g
    return np.array([(c1 * g2 - c2 * g1) / (c1 - c2), (g1 - g2) / (c1 - c2)])


def _p2_nu4(c, g):
    sig = np.array([np.prod([c[m] - c[s] for s in range(4) if s != m]) for m in range(4)])
    e1 = np.array([sum(c[r] for r in range(4) if r != m) for m in range(4)])
    e2 = np.array([
        sum(c[r] * c[s] for r in range(4) for s in range(r + 1, 4) if m not in (r, s))
        for m in range(4)
    ])
    e3 = np.array([np.prod([c[r] for r in range(4) if r != m]) for m in range(4)])
    p4 = 0.25 * np.sum(g / sig)
    p3 = -0.5 * np.sum(e1 * g / sig)
    p2 = 3.0 * p4 + np.sum(e2 * g / sig)
    p1 = p3 - np.sum(e3 * g / sig)
    return np.array([p1, p2, p3, p4])


def _p2_generic(c, g):
    # Newton form, multiplied out directly in the Chebyshev basis
    nu = len(c)
    dd = np.array(g, dtype=complex)
    for j in range(1, nu):
        dd[j:] = (dd[j:] - dd[j - 1:-1]) / (c[j:] - c[:-j])
    p = np.array([dd[-1]], dtype=complex)
    for j in range(nu - 2, -1, -1):
        # p <- p * (x - c_j) + dd_j ; x T_k = (T_{k+1} + T_{|k-1|})/2
        q = np.zeros(len(p) + 1, dtype=complex)
        for k, pk in enumerate(p):
            q[k + 1] += 0.5 * pk
            q[abs(k - 1)] += 0.5 * pk
        q[: len(p)] -= c[j] * p
        q[0] += dd[j]
        p = q
    return p


def _times_correction_factor(p2, n):
    """(n-1)/2 (T_n - T_{n-2}) * p2, via 2 T_r T_s = T_{r+s} + T_{|r-s|}."""
    nu = len(p2)
    p3 = np.zeros(n + nu, dtype=complex)
    q = (n - 1) / 4.0
    for k, pk in enumerate(p2):
        p3[n + k] += q * pk
        p3[abs(k - n)] += q * pk
        p3[n - 2 + k] -= q * pk
        p3[abs(k - n + 2)] -= q * pk
    return p3


def build_correction(f_at_nodes, p1, extra_nodes, n):
    """
    Chebyshev coefficients of p3 (degree n + nu - 1).

    Parameters
    ----------
    f_at_nodes : array
        f evaluated at the extra nodes.
    p1 : ChebyshevExpansion
        Interpolant on the n-point Chebyshev grid.
    extra_nodes : ComplexNodeSet or array
    n : int
    """
    c = extra_nodes.nodes if isinstance(extra_nodes, ComplexNodeSet) else np.asarray(extra_nodes, dtype=complex)
    nu = c.size
    if nu == 0:
        return ChebyshevExpansion(np.zeros(n, dtype=complex))
    x = chebyshev_points(n)
    if np.min(np.abs(c[:, None] - x[None, :])) < 1e-12:
        raise ValueError("extra node coincides with a Chebyshev point")
    denom = 0.5 * (n - 1) * (_cheb_T(n, c) - _cheb_T(n - 2, c))
    g = (np.asarray(f_at_nodes, dtype=complex) - p1(c)) / denom
    if nu == 2:
        p2 = _p2_nu2(c, g)
    elif nu == 4:
        p2 = _p2_nu4(c, g)
    else:
        p2 = _p2_generic(c, g)
    return ChebyshevExpansion(_times_correction_factor(p2, n))


def fcc_from_samples(cheb_values, extra_nodes, f_at_nodes, omega, tau=None):
    """Algorithm core once the samples are known; ``tau`` may be a precomputed moment table."""
    n = len(cheb_values)
    p1 = cheb_coeffs_from_values(cheb_values)
    nu = 0 if extra_nodes is None else len(extra_nodes)
    p = p1.padded(n + nu)
    if nu:
        p = p + build_correction(f_at_nodes, p1, extra_nodes, n).coeffs
    if tau is None or len(tau) < n + nu:
        tau = cheb_moments(n + nu - 1, omega).values
    return complex(np.dot(p, tau[: n + nu]))


def fcc_quadrature(f, n, extra_nodes, omega):
    """
    Filon-Clenshaw-Curtis rule with extra nodes (n + nu evaluations of f).

    ``extra_nodes`` may be None or empty for the plain FCC rule.  Extra
    nodes too close to a Chebyshev point are nudged (see
    :func:`oscquad.nodes.guard_nodes`).
    """
    x = chebyshev_points(n)
    cheb_values = np.asarray(f(x), dtype=complex)
    if extra_nodes is None or len(extra_nodes) == 0:
        return fcc_from_samples(cheb_values, None, None, omega)
    ns = guard_nodes(extra_nodes, x)
    _require_complex_ok(f, ns.nodes)
    arg = ns.nodes if not ns.is_real else ns.nodes.real
    fc = np.asarray(f(arg), dtype=complex)
    return fcc_from_samples(cheb_values, ns, fc, omega)
