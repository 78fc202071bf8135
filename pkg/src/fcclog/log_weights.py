"""Non-oscillatory modified moments of the logarithmic kernel.

Generates ``eta_n = integral U_n(x) log((x-alpha)^2) dx`` by a stable forward
three-term recurrence and assembles ``xi_n = integral T_n(x) log((x-alpha)^2)
dx`` from them via ``xi_n = (eta_n - eta_{n-2}) / 2``.  These tables are both
the ``k = 0`` quadrature weights and the raw material for the Jacobi-Anger
tail of the oscillatory table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import eta_log_forward, eta_log_forward_dd, eta_log_forward_even

_LD = np.longdouble

__all__ = [
    "LogWeightTable",
    "eta0_log",
    "gamma_log",
    "eta_nonosc",
    "xi_nonosc",
    "xi_from_eta",
]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not abs(alpha) <= 1.0:
        raise ValueError("alpha must lie in [-1, 1]")
    return alpha


def _xlogx(t: float) -> float:
    # t*log(t) extended by its limit 0 at t = 0 (arises at alpha = +-1)
    return 0.0 if t == 0.0 else t * math.log(t)


@dataclass(frozen=True)
class LogWeightTable:
    """Weights at fixed ``alpha`` for ``n = 0..N``: ``eta`` in the ``U`` basis,
    ``xi`` in the ``T`` basis."""

    alpha: float
    N: int
    eta: np.ndarray = field(repr=False)
    xi: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.eta.setflags(write=False)
        self.xi.setflags(write=False)


def eta0_log(alpha: float) -> float:
    """Closed form ``eta_0 = 2[(1-a)log(1-a) + (1+a)log(1+a)] - 4``,
    equal to ``4 log 2 - 4`` at ``alpha = +-1`` and ``-4`` at ``alpha = 0``."""
    alpha = _check_alpha(alpha)
    return 2.0 * (_xlogx(1.0 - alpha) + _xlogx(1.0 + alpha)) - 4.0


def gamma_log(alpha: float, N: int) -> np.ndarray:
    """Inhomogeneous terms ``(gamma_1, ..., gamma_N)`` of the recurrence.

    Even ``n``: ``(4/(n+1)) [(1-a)log(1-a) + (1+a)log(1+a) + 2/(n^2-1)]``;
    odd ``n``:  ``(4/(n+1)) [(1-a)log(1-a) - (1+a)log(1+a)]``.
    The ``x log x`` terms take their limit value 0 at ``alpha = +-1``, which
    reproduces the endpoint-case coefficients exactly.
    """
    alpha = _check_alpha(alpha)
    if N < 1:
        return np.empty(0)
    plus = _xlogx(1.0 - alpha) + _xlogx(1.0 + alpha)
    minus = _xlogx(1.0 - alpha) - _xlogx(1.0 + alpha)
    n = np.arange(1.0, N + 1.0)
    gamma = np.empty(N)
    n_even = n[1::2]
    gamma[1::2] = (4.0 / (n_even + 1.0)) * (plus + 2.0 / (n_even * n_even - 1.0))
    gamma[0::2] = (4.0 / (n[0::2] + 1.0)) * minus
    return gamma


def _xlogx_ld(t):
    return _LD(0) if t == 0 else t * np.log(t)


def _gamma_log_split(alpha: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    # forcing terms evaluated in 80-bit precision, split into hi/lo doubles
    a = _LD(alpha)
    plus = _xlogx_ld(_LD(1) - a) + _xlogx_ld(_LD(1) + a)
    minus = _xlogx_ld(_LD(1) - a) - _xlogx_ld(_LD(1) + a)
    n = np.arange(1, N + 1, dtype=_LD)
    g = np.empty(N, dtype=_LD)
    n_even = n[1::2]
    g[1::2] = (4 / (n_even + 1)) * (plus + 2 / (n_even * n_even - 1))
    g[0::2] = (4 / (n[0::2] + 1)) * minus
    hi = np.asarray(g, dtype=np.float64)
    lo = np.asarray(g - hi, dtype=np.float64)
    return hi, lo


def _eta0_log_split(alpha: float) -> tuple[float, float]:
    a = _LD(alpha)
    v = 2 * (_xlogx_ld(_LD(1) - a) + _xlogx_ld(_LD(1) + a)) - 4
    hi = float(v)
    return hi, float(v - _LD(hi))


def eta_nonosc(alpha: float, N: int) -> np.ndarray:
    """Sequence ``(eta_0, ..., eta_N)`` by the forward recurrence

    ``eta_n = (2 a n/(n+1)) eta_{n-1} - ((n-1)/(n+1)) eta_{n-2} + gamma_n``

    started from ``eta_{-1} = 0`` and the closed-form ``eta_0``.  The loop
    accumulates in compensated double-double arithmetic (the recurrence is
    stable, but at ``alpha = +-1`` plain double rounding still drifts by a
    few hundred ulps over hundreds of steps; compensation removes that for
    free at ``O(N)``).
    """
    alpha = _check_alpha(alpha)
    if N < 0:
        raise ValueError("N must be nonnegative")
    gh, gl = _gamma_log_split(alpha, N)
    e0h, e0l = _eta0_log_split(alpha)
    return eta_log_forward_dd(alpha, e0h, e0l, gh, gl)


def eta_nonosc_parity_fast(N: int) -> np.ndarray:
    """Plain-double ``alpha = 0`` shortcut: parity kills the odd entries and
    the recurrence runs over even indices only.  Kept as an (optional) fast
    path; must agree with the general path to 1e-15."""
    gamma = gamma_log(0.0, N)
    even = eta_log_forward_even(eta0_log(0.0), gamma[1::2].copy())
    out = np.zeros(N + 1)
    out[0::2] = even
    return out


def _eta_nonosc_plain(alpha: float, N: int) -> np.ndarray:
    # uncompensated run, kept for the stability experiments and tests
    alpha = _check_alpha(alpha)
    return eta_log_forward(alpha, eta0_log(alpha), gamma_log(alpha, N))


def xi_from_eta(eta: np.ndarray) -> np.ndarray:
    """Halved-difference assembly ``xi_0 = eta_0``,
    ``xi_n = (eta_n - eta_{n-2})/2`` with ``eta_{-1} = 0``."""
    xi = np.empty_like(eta)
    xi[0] = eta[0]
    if len(eta) > 1:
        xi[1] = 0.5 * eta[1]
    if len(eta) > 2:
        xi[2:] = 0.5 * (eta[2:] - eta[:-2])
    return xi


def xi_nonosc(alpha: float, N: int) -> LogWeightTable:
    """Full table of ``eta`` and ``xi`` weights for ``n = 0..N`` in ``O(N)``."""
    eta = eta_nonosc(alpha, N)
    return LogWeightTable(alpha=float(alpha), N=N, eta=eta, xi=xi_from_eta(eta))
