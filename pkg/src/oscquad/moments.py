"""
Moments of the Fourier oscillator on [-1, 1].

    mu_k(w)  = int_{-1}^{1} x^k   exp(i w x) dx
    tau_k(w) = int_{-1}^{1} T_k(x) exp(i w x) dx

Both tables are computed in real arithmetic on the "reduced" sequences
m_k with mu_k = i^(k mod 2) m_k (same for tau), which makes the parity
structure (real for even k, imaginary for odd k) exact.

Power moments use the integration-by-parts recurrence upward while
k <= |w| and downward (Miller style, started far enough out that the
starting guess has decayed) above that.  For |w| < 1 a Taylor series
in w is summed instead.

Chebyshev moments use the forward three-term recurrence for k <= |w|
and, for k > |w|, a tridiagonal boundary-value solve whose far end is
pinned by the leading asymptotic term of tau_N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

__all__ = [
    "PowerMomentTable",
    "ChebMomentTable",
    "power_moments",
    "cheb_moments",
]

_SERIES_CUTOFF = 1.0
_SERIES_EPS = 1e-18
_BACKWARD_DAMPING = 1e-20
_CHEB_GUARD = 10


@dataclass(frozen=True)
class PowerMomentTable:
    """mu_0..mu_K for a single frequency."""

    omega: float
    values: np.ndarray

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


@dataclass(frozen=True)
class ChebMomentTable:
    """tau_0..tau_K for a single frequency."""

    omega: float
    values: np.ndarray

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


def _check_args(K, omega):
    if isinstance(K, bool) or int(K) != K or K < 0:
        raise ValueError(f"K must be a non-negative integer, got {K!r}")
    omega = float(omega)
    if not math.isfinite(omega):
        raise ValueError(f"omega must be finite, got {omega!r}")
    return int(K), omega


def _attach_parity(m, conj):
    """Turn reduced real moments into complex ones; conj handles w < 0."""
    out = np.zeros(len(m), dtype=complex)
    out.real[0::2] = m[0::2]
    out.imag[1::2] = -m[1::2] if conj else m[1::2]
    return out


def _power_series(K, w):
    # sum_j (i w)^j / j! * 2/(k+j+1) over j with k+j even
    m = np.zeros(K + 1)
    for k in range(K + 1):
        j = k % 2
        term = w**j / math.factorial(j)
        sign = 1.0
        acc = 0.0
        while True:
            contrib = sign * term * 2.0 / (k + j + 1)
            acc += contrib
            if abs(term) < _SERIES_EPS:
                break
            term *= w * w / ((j + 1) * (j + 2))
            sign = -sign
            j += 2
        m[k] = acc
    return m


def _power_recurrence(K, w):
    # m_k = (a_k + s_k k m_{k-1}) / w
    # even k: a_k = 2 sin w, s_k = -1 ; odd k: a_k = -2 cos w, s_k = +1
    sw, cw = math.sin(w), math.cos(w)
    m = np.zeros(K + 1)
    k0 = min(K, int(math.floor(w)))
    m[0] = 2.0 * sw / w
    for k in range(1, k0 + 1):
        if k % 2:
            m[k] = (-2.0 * cw + k * m[k - 1]) / w
        else:
            m[k] = (2.0 * sw - k * m[k - 1]) / w
    if k0 == K:
        return m

    # downward: m_{k-1} = s_k (w m_k - a_k) / k, error shrinks by w/k per step
    N = K
    damp = 1.0
    while damp > _BACKWARD_DAMPING or N < K + 10:
        N += 1
        damp *= w / N
    cur = 0.0
    for k in range(N, k0 + 1, -1):
        if k % 2:
            prev = (w * cur + 2.0 * cw) / k
        else:
            prev = -(w * cur - 2.0 * sw) / k
        if k - 1 <= K:
            m[k - 1] = prev
        cur = prev
    return m


def power_moments(K, omega):
    """
    Power moments mu_0..mu_K of exp(i omega x) on [-1, 1].

    Parameters
    ----------
    K : int
        Highest degree, K >= 0.
    omega : float
        Frequency; any finite real.  Negative values use
        mu_k(-w) = conj(mu_k(w)).

    Returns
    -------
    PowerMomentTable
    """
    K, omega = _check_args(K, omega)
    w = abs(omega)
    if w == 0.0:
        k = np.arange(K + 1)
        m = np.where(k % 2 == 0, 2.0 / (k + 1), 0.0)
    elif w < _SERIES_CUTOFF:
        m = _power_series(K, w)
    else:
        m = _power_recurrence(K, w)
    return PowerMomentTable(omega, _attach_parity(m, omega < 0))


def _cheb_bvp(t, k0, N, w):
    """Fill t[k0+1 .. N-1] given t[k0] and t[N].

    Row k (k >= 2) of the recurrence, in reduced variables:
        s_k w t_{k-1}/(k-1) ... written as
        -s_k w/(k-1) t_{k-1} + 2 t_k + s_k w/(k+1) t_{k+1} = -4 beta_k/(k^2-1)
    with s_k = -1, beta_k = cos w for even k and s_k = +1, beta_k = sin w
    for odd k.
    """
    ks = np.arange(k0 + 1, N)
    n = len(ks)
    if n == 0:
        return
    s = np.where(ks % 2 == 0, -1.0, 1.0)
    beta = np.where(ks % 2 == 0, math.cos(w), math.sin(w))
    lower = -s * w / (ks - 1)
    upper = s * w / (ks + 1)
    rhs = -4.0 * beta / (ks * ks - 1.0)
    rhs[0] -= lower[0] * t[k0]
    rhs[-1] -= upper[-1] * t[N]
    ab = np.zeros((3, n))
    ab[0, 1:] = upper[:-1]
    ab[1, :] = 2.0
    ab[2, :-1] = lower[1:]
    t[k0 + 1:N] = solve_banded((1, 1), ab, rhs)


def _cheb_far_value(N, w):
    # tau_N ~ -(e^{iw} + (-1)^N e^{-iw}) / (N^2 - 1) for N >> w
    if N % 2 == 0:
        return -2.0 * math.cos(w) / (N * N - 1.0)
    return -2.0 * math.sin(w) / (N * N - 1.0)


def cheb_moments(K, omega):
    """
    Chebyshev moments tau_0..tau_K of exp(i omega x) on [-1, 1].

    The forward recurrence, obtained by integrating
    2 T_k = T'_{k+1}/(k+1) - T'_{k-1}/(k-1) against exp(i w x) by parts,
    is only used for k <= |w|.  The remaining moments are the solution of
    the same recurrence posed as a boundary-value problem on
    [floor(|w|), N], where N is pushed well beyond both K and |w| so the
    approximate far boundary value no longer matters.

    Parameters
    ----------
    K : int
        Highest degree, K >= 0.
    omega : float
        Frequency; any finite real.

    Returns
    -------
    ChebMomentTable
    """
    K, omega = _check_args(K, omega)
    w = abs(omega)
    if w == 0.0:
        k = np.arange(K + 1)
        with np.errstate(divide="ignore"):
            t = np.where(k % 2 == 0, 2.0 / (1.0 - k * k), 0.0)
        return ChebMomentTable(omega, t.astype(complex))

    mu = power_moments(min(K, 1), w).values
    k0 = max(1, int(math.floor(w)))
    N = max(K, k0) + _CHEB_GUARD
    if K > w:
        # far enough that the growing homogeneous solution swamps the
        # boundary error (ratio ~ 2k/w per step beyond 2w)
        N = max(N, int(2 * w) + 40, K + 40)
    t = np.zeros(max(N, K) + 1)
    t[0] = mu[0].real
    if K >= 1:
        t[1] = mu[1].imag
    sw, cw = math.sin(w), math.cos(w)
    # forward: t_{k+1} = (k+1)/(s_k w) [ -4 beta_k/(k^2-1) - 2 t_k + s_k w t_{k-1}/(k-1) ]
    for k in range(1, min(k0, K)):
        s = -1.0 if k % 2 == 0 else 1.0
        beta = cw if k % 2 == 0 else sw
        if k == 1:
            # T_2 = 2x^2 - 1  ->  tau_2 = 2 mu_2 - mu_0
            mu2 = power_moments(2, w).values[2].real
            t[2] = 2.0 * mu2 - t[0]
            continue
        t[k + 1] = (k + 1) / (s * w) * (-4.0 * beta / (k * k - 1.0) - 2.0 * t[k] + s * w * t[k - 1] / (k - 1))
    if K > k0:
        t[N] = _cheb_far_value(N, w)
        _cheb_bvp(t, k0, N, w)
    return ChebMomentTable(omega, _attach_parity(t[: K + 1], omega < 0))
