"""Sine integral, cosine integral, and Bessel-J sequences.

Self-contained replacements for symbolic-toolbox calls.  Si and Ci combine a
cancellation-free power series (summed in exact rational arithmetic, so the
alternating blow-up costs no digits) with the optimally truncated asymptotic
expansion of the auxiliary functions f and g.  Bessel sequences run the
three-term recurrence forward while the order stays below the argument and
switch to a diagonally dominant tridiagonal system beyond it, seeded with an
asymptotic tail value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import bessel_forward, thomas

__all__ = [
    "SpecialValue",
    "EULER_GAMMA",
    "si",
    "ci",
    "bessel_j",
    "bessel_j01",
    "bessel_j_sequence",
    "bessel_tail_length",
]

EULER_GAMMA = 0.5772156649015328606065120900824024

# The rational series is exact at any argument but its term count grows with
# t; the asymptotic expansion first reaches ~2e-14 absolute error near t = 30.
SICI_SERIES_MAX = 30.0
# Below this argument J0/J1 come from the exact-rational ascending series;
# above it the Hankel expansion is already at machine precision.
BESSEL_SERIES_MAX = 16.0

_SERIES_CUTOFF = Fraction(1, 10**36)


@dataclass(frozen=True)
class SpecialValue:
    """Scalar special-function result tagged with the branch that produced it."""

    value: float
    method: str  # one of: series, asymptotic, recurrence, oliver


def _si_series(t: float) -> float:
    # sum (-1)^m t^(2m+1) / ((2m+1) (2m+1)!) in exact rationals
    tf = Fraction(t)
    t2 = tf * tf
    term = tf
    total = Fraction(0)
    m = 0
    while True:
        total += term / (2 * m + 1)
        term = -term * t2 / ((2 * m + 2) * (2 * m + 3))
        m += 1
        if abs(term) < _SERIES_CUTOFF:
            break
    return float(total)


def _ci_series_sum(t: float) -> float:
    # sum_{m>=1} (-1)^m t^(2m) / ((2m) (2m)!) in exact rationals
    tf = Fraction(t)
    t2 = tf * tf
    term = -t2 / 2
    total = Fraction(0)
    m = 1
    while True:
        total += term / (2 * m)
        term = -term * t2 / ((2 * m + 1) * (2 * m + 2))
        m += 1
        if abs(term) < _SERIES_CUTOFF:
            break
    return float(total)


def _sici_aux_asymptotic(t: float) -> tuple[float, float]:
    # f(t) ~ sum (-1)^m (2m)!   / t^(2m+1)
    # g(t) ~ sum (-1)^m (2m+1)! / t^(2m+2)
    # both truncated at their smallest term
    t2 = t * t
    f = 0.0
    term = 1.0 / t
    m = 0
    while True:
        f += term
        nxt = -term * (2 * m + 1) * (2 * m + 2) / t2
        if abs(nxt) >= abs(term):
            break
        term = nxt
        m += 1
    g = 0.0
    term = 1.0 / t2
    m = 0
    while True:
        g += term
        nxt = -term * (2 * m + 2) * (2 * m + 3) / t2
        if abs(nxt) >= abs(term):
            break
        term = nxt
        m += 1
    return f, g


def si(t: float) -> SpecialValue:
    """Sine integral ``Si(t) = integral_0^t sin(x)/x dx`` for ``t >= 0``.

    Callers wanting negative arguments use the odd extension.  Absolute
    error stays below ``1e-13`` on both branches.
    """
    if t < 0:
        raise ValueError("si is defined here for t >= 0 (odd extension is the caller's)")
    if t == 0.0:
        return SpecialValue(0.0, "series")
    if t <= SICI_SERIES_MAX:
        return SpecialValue(_si_series(t), "series")
    f, g = _sici_aux_asymptotic(t)
    return SpecialValue(math.pi / 2 - f * math.cos(t) - g * math.sin(t), "asymptotic")


def ci(t: float) -> SpecialValue:
    """Cosine integral ``Ci(t) = gamma + log(t) + integral_0^t (cos(x)-1)/x dx``.

    Requires ``t > 0``; ``Ci(t) - log(t)`` stays smooth through ``t -> 0+``.
    """
    if t <= 0:
        raise ValueError("ci requires t > 0")
    if t <= SICI_SERIES_MAX:
        return SpecialValue(EULER_GAMMA + math.log(t) + _ci_series_sum(t), "series")
    f, g = _sici_aux_asymptotic(t)
    return SpecialValue(f * math.sin(t) - g * math.cos(t), "asymptotic")


def _j01_series(k: float, nu: int) -> float:
    # ascending series sum (-1)^m (k/2)^(2m+nu) / (m! (m+nu)!), exact rationals
    kf = Fraction(k)
    x2 = kf * kf / 4
    term = Fraction(1) if nu == 0 else kf / 2
    total = Fraction(0)
    m = 0
    while True:
        total += term
        term = -term * x2 / ((m + 1) * (m + 1 + nu))
        m += 1
        if abs(term) < _SERIES_CUTOFF * (1 + abs(total)):
            break
    return float(total)


def _j01_hankel(k: float, nu: int) -> float:
    # J_nu(k) = sqrt(2/(pi k)) (P cos(chi) - Q sin(chi)), chi = k - (2nu+1)pi/4,
    # P and Q the standard large-argument series truncated at the smallest
    # term.  Terms a_j(nu)/k^j are carried incrementally by their ratio so
    # nothing overflows at large k.
    mu = 4 * nu * nu
    t = 1.0  # a_j / k^j, starting at j = 0
    j = 0
    p_sum = 0.0
    q_sum = 0.0
    p_last = math.inf
    q_last = math.inf
    p_done = q_done = False
    while not (p_done and q_done) and j <= 60:
        signed = t if (j // 2) % 2 == 0 else -t
        if j % 2 == 0:
            if not p_done:
                if abs(t) >= p_last:
                    p_done = True
                else:
                    p_sum += signed
                    p_last = abs(t)
        else:
            if not q_done:
                if abs(t) >= q_last:
                    q_done = True
                else:
                    q_sum += signed
                    q_last = abs(t)
        t = t * (mu - (2 * j + 1) ** 2) / (8.0 * (j + 1) * k)
        j += 1
    chi = k - (2 * nu + 1) * math.pi / 4
    return math.sqrt(2.0 / (math.pi * k)) * (p_sum * math.cos(chi) - q_sum * math.sin(chi))


def bessel_j01(k: float) -> tuple[SpecialValue, SpecialValue]:
    """``(J_0(k), J_1(k))`` by the ascending series below ``k = 16`` and the
    Hankel large-argument expansion above it."""
    if k <= 0:
        raise ValueError("bessel_j01 requires k > 0")
    if k <= BESSEL_SERIES_MAX:
        return (
            SpecialValue(_j01_series(k, 0), "series"),
            SpecialValue(_j01_series(k, 1), "series"),
        )
    return (
        SpecialValue(_j01_hankel(k, 0), "asymptotic"),
        SpecialValue(_j01_hankel(k, 1), "asymptotic"),
    )


def bessel_tail_length(k: float) -> int:
    """Truncation order ``25 + ceil(e*k/2)`` past which ``J_m(k)`` is dead."""
    return 25 + math.ceil(math.e * k / 2.0)


def bessel_j(n: int, k: float) -> SpecialValue:
    """Single value ``J_n(k)`` with the branch tag of the sequence machinery:
    direct series/asymptotic for orders 0 and 1, forward recurrence up to
    ``floor(k)``, the tridiagonal continuation beyond."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    value = float(bessel_j_sequence(k, n)[n])
    if n <= 1:
        return SpecialValue(value, bessel_j01(k)[n].method)
    return SpecialValue(value, "recurrence" if n <= math.floor(k) else "oliver")


def _bessel_tail_seed(k: float, m: int) -> float:
    # J_m(k) ~ (2 pi m)^(-1/2) (e k / (2 m))^m, valid well past the turning
    # point m ~ k; evaluated in log form so deep tails underflow cleanly.
    ex = m * (1.0 + math.log(k / 2.0) - math.log(m)) - 0.5 * math.log(2.0 * math.pi * m)
    if ex < -745.0:
        return 0.0
    return math.exp(ex)


def bessel_j_sequence(k: float, M: int) -> np.ndarray:
    """First-kind Bessel values ``(J_0(k), ..., J_M(k))``.

    The three-term recurrence runs forward only while ``n <= floor(k)``;
    higher orders come from the row-dominant tridiagonal reformulation,
    extended to ``25 + ceil(e*k/2)`` and seeded with the asymptotic tail
    value (better than seeding with zero).  Each entry is good to ``1e-12``
    absolute.
    """
    if k <= 0:
        raise ValueError("bessel_j_sequence requires k > 0")
    if M < 0:
        raise ValueError("M must be nonnegative")
    j0, j1 = bessel_j01(k)
    if M == 0:
        return np.array([j0.value])
    nk = math.floor(k)
    n_fwd = min(M, nk)  # top order filled by direct values + forward recurrence
    vals = bessel_forward(k, j0.value, j1.value, max(n_fwd, 1))
    if M <= max(nk, 1):
        return vals[: M + 1]

    start = max(nk, 1) + 1  # first order the recurrence cannot reach stably
    m_top = max(M, bessel_tail_length(k))
    orders = np.arange(start, m_top + 1)
    diag = -2.0 * orders / k
    sub = np.ones(len(orders) - 1)
    sup = np.ones(len(orders) - 1)
    rhs = np.zeros(len(orders))
    rhs[0] = -vals[start - 1]
    rhs[-1] = -_bessel_tail_seed(k, m_top + 1)
    solved = thomas(sub, diag, sup, rhs)
    return np.concatenate([vals[:start], solved])[: M + 1]
