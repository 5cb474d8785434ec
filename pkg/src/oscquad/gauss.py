"""Gauss-Legendre rules and the plain (non-fitted) oscillatory Gauss sum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["GaussRule", "legendre_rule", "gauss_oscillatory"]

MAX_NU = 64


@dataclass(frozen=True)
class GaussRule:
    nu: int
    nodes: np.ndarray
    weights: np.ndarray


def _legendre_and_derivative(n, x):
    p0 = np.ones_like(x)
    p1 = x.copy()
    if n == 0:
        return p0, np.zeros_like(x)
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=None)
def _rule(nu):
    # Chebyshev-angle guesses, then Newton on P_nu
    k = np.arange(1, nu + 1)
    x = np.cos(np.pi * (k - 0.25) / (nu + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(nu, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p, dp = _legendre_and_derivative(nu, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x = x[::-1].copy()
    w = w[::-1].copy()
    # enforce the exact symmetry the rule has in exact arithmetic
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    if nu % 2:
        x[nu // 2] = 0.0
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def legendre_rule(nu):
    """
    nu-point Gauss-Legendre rule on [-1, 1].

    Nodes ascend; exact for polynomials of degree <= 2 nu - 1.
    """
    if isinstance(nu, bool) or int(nu) != nu or not 1 <= nu <= MAX_NU:
        raise ValueError(f"nu must be an integer in [1, {MAX_NU}], got {nu!r}")
    nu = int(nu)
    if nu == 1:
        return GaussRule(1, np.array([0.0]), np.array([2.0]))
    x, w = _rule(nu)
    return GaussRule(nu, x, w)


def gauss_oscillatory(rule, f, omega):
    """sum_l b_l f(c_l) exp(i omega c_l): Gauss applied to the whole integrand."""
    c = rule.nodes
    return complex(np.sum(rule.weights * np.asarray(f(c)) * np.exp(1j * omega * c)))
