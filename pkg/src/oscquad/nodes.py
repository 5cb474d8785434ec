"""
Frequency-dependent interpolation nodes.

Families
--------
FA   real nodes that leave the Legendre points along an S-shaped curve
     and approach the endpoints like 1/omega (nu = 2, 3, 4)
FC   complex nodes +-1 + sigma(omega) optimising the asymptotic order
     (nu = 2, 3, 4)
FCA  nu = 2 nodes whose real part follows FA-like S-curves and whose
     imaginary part switches on to the FC value 1/omega
FCC-C2
     the pair -1 + 2i/omega, 1 + 2i/omega, meant to be combined with
     Chebyshev points (both endpoints already present)
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .filon import ComplexNodeSet
from .gauss import legendre_rule

__all__ = [
    "SShapeParams",
    "s_shape",
    "nodes_FA",
    "nodes_FC",
    "nodes_FCA",
    "nodes_FCC_C2",
    "family_nodes",
    "guard_nodes",
    "FAMILIES",
    "dump_trajectories",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SShapeParams:
    r: float = 2 * math.pi
    n: int = 1

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("S-shape centre r must be positive")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("S-shape exponent n must be a positive integer")


def s_shape(omega, params=SShapeParams()):
    """
    S(w; r; n) = (1 - d/(1+|d|)) / (1 + r^n/(1+r^n)),  d = w^n - r^n.

    Equals 1 at w = 0 and decays like w^-n for large w.  Vectorised.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("s_shape is defined for omega >= 0")
    rn = params.r ** params.n
    d = w ** params.n - rn
    out = (1.0 - d / (1.0 + np.abs(d))) / (1.0 + rn / (1.0 + rn))
    return float(out) if out.ndim == 0 else out


def _positive_legendre(nu):
    x = legendre_rule(nu).nodes
    return x[x > 0]


def nodes_FA(nu, omega):
    """Adaptive Filon nodes: each positive Legendre node c pulled to 1 as 1-(1-c)S(w;2pi;1)."""
    if nu not in (2, 3, 4):
        raise ValueError(f"FA nodes exist for nu in (2, 3, 4), got {nu!r}")
    if omega < 0:
        raise ValueError("omega must be non-negative")
    S = s_shape(omega, SShapeParams(2 * math.pi, 1))
    pos = 1.0 - (1.0 - _positive_legendre(nu)) * S
    mid = [0.0] if nu % 2 else []
    c = np.concatenate([-pos[::-1], mid, pos])
    return ComplexNodeSet(c, f"FA{nu}", float(omega))


def nodes_FC(nu, omega):
    """Complex Filon nodes of optimal asymptotic order."""
    if nu not in (2, 3, 4):
        raise ValueError(f"FC nodes exist for nu in (2, 3, 4), got {nu!r}")
    if not omega > 0:
        raise ValueError("FC nodes need omega > 0")
    s = 1j / omega
    if nu == 2:
        c = [-1 + s, 1 + s]
    elif nu == 3:
        c = [-1 + s, 0.0, 1 + s]
    else:
        lo, hi = (2 - SQRT2) * s, (2 + SQRT2) * s
        c = [-1 + lo, -1 + hi, 1 + lo, 1 + hi]
    return ComplexNodeSet(np.array(c, dtype=complex), f"FC{nu}", float(omega))


def nodes_FCA(omega):
    """nu = 2 nodes with S-shaped real and imaginary parts."""
    if not omega > 0:
        raise ValueError("FCA nodes need omega > 0")
    cbar = 1.0 / math.sqrt(3.0)
    re = (cbar - 1.0) * s_shape(omega, SShapeParams(math.pi, 2)) + 1.0
    im = (1.0 - s_shape(omega, SShapeParams(math.pi, 1))) / omega
    return ComplexNodeSet(np.array([-re + 1j * im, re + 1j * im]), "FCA2", float(omega))


def nodes_FCC_C2(omega):
    """Complex companions to a Chebyshev grid: -1 + 2i/w, 1 + 2i/w."""
    if not omega > 0:
        raise ValueError("FCC-C2 nodes need omega > 0")
    s = 2j / omega
    return ComplexNodeSet(np.array([-1 + s, 1 + s]), "FCC-C2", float(omega))


FAMILIES = {
    "FA2": lambda w: nodes_FA(2, w),
    "FA3": lambda w: nodes_FA(3, w),
    "FA4": lambda w: nodes_FA(4, w),
    "FC2": lambda w: nodes_FC(2, w),
    "FC3": lambda w: nodes_FC(3, w),
    "FC4": lambda w: nodes_FC(4, w),
    "FCA2": nodes_FCA,
    "FCC-C2": nodes_FCC_C2,
}


def family_nodes(family, omega):
    try:
        gen = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown node family {family!r}; known: {sorted(FAMILIES)}") from None
    return gen(omega)


def guard_nodes(nodes, avoid, tol=1e-10, nudge=1e-8):
    """
    Move nodes that (nearly) coincide with points in ``avoid``.

    A node within ``tol`` of an avoided point is shifted by ``nudge``
    towards the origin, which keeps interpolation well posed when an
    S-curve crosses a Chebyshev point.
    """
    ns = nodes if isinstance(nodes, ComplexNodeSet) else ComplexNodeSet(nodes)
    c = ns.nodes.copy()
    avoid = np.asarray(avoid, dtype=complex)
    for i, ci in enumerate(c):
        if np.min(np.abs(avoid - ci)) < tol:
            re = ci.real
            c[i] = (re - math.copysign(nudge, re) if re != 0 else re + nudge) + 1j * ci.imag
    if np.array_equal(c, ns.nodes):
        return ns
    return ComplexNodeSet(c, ns.family, ns.omega)


def dump_trajectories(family, omegas, path):
    """Write node trajectories of ``family`` over ``omegas`` as CSV."""
    rows = [family_nodes(family, w).nodes for w in omegas]
    nu = len(rows[0]) if rows else 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["omega"]
        for k in range(1, nu + 1):
            header += [f"re_c{k}", f"im_c{k}"]
        writer.writerow(header)
        for w, c in zip(omegas, rows):
            line = [repr(float(w))]
            for ck in c:
                line += [repr(float(ck.real)), repr(float(ck.imag))]
            writer.writerow(line)
