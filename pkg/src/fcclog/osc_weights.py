"""Oscillatory modified moments ``xi_n(k) = integral T_n log((x-a)^2) e^{ikx} dx``.

For ``k > 2`` the ``U``-basis moments ``eta_n(k)`` satisfy the three-term
recurrence

    eta_n(k) = gamma_n(k) - (2n/(ik)) eta_{n-1}(k) + eta_{n-2}(k)

which is run forward while ``n <= floor(k) - 1`` (where it is benign) and
recast as a row-dominant tridiagonal boundary-value system beyond that, with
the final value ``eta_N(k)`` supplied by a truncated Jacobi-Anger expansion
over the non-oscillatory moments.  The same forward/tridiagonal split is used
for the plane-wave moments ``rho_j(k) = integral U_j e^{ikx} dx`` feeding the
inhomogeneous terms.

Each building block carries its own oracle-facing contract; the tests pin all
of them against direct graded-mesh integration.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from ._kernels import osc_forward, rho_forward, thomas
from .chebyshev import chebyshev_t_row
from .log_weights import eta_nonosc, xi_from_eta
from .special import bessel_j_sequence, bessel_tail_length, ci, si

__all__ = [
    "OscWeightTable",
    "TridiagonalSystem",
    "rho_sequence",
    "gamma_osc",
    "eta0_osc",
    "eta_forward",
    "eta_tail",
    "eta_oliver",
    "osc_weight_table",
    "oliver_system",
]

# direct summation of the gamma convolution below this length, FFT above
CONV_FFT_MIN = 64


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not abs(alpha) <= 1.0:
        raise ValueError("alpha must lie in [-1, 1]")
    return alpha


def _i_pow(m: np.ndarray) -> np.ndarray:
    # i**m without trig round-off
    table = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])
    return table[np.asarray(m) % 4]


@dataclass(frozen=True)
class OscWeightTable:
    """Weights at fixed ``(alpha, k)`` for ``n = 0..N``; complex valued."""

    alpha: float
    k: float
    N: int
    eta: np.ndarray = field(repr=False)
    xi: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.eta.setflags(write=False)
        self.xi.setflags(write=False)


@dataclass(frozen=True)
class TridiagonalSystem:
    """Oliver reformulation ``A x = b`` of a three-term recurrence.

    Row ``i`` encodes the recurrence at level ``n = n_first + i`` with the
    known boundary values folded into ``rhs``; row dominance makes the
    pivot-free Thomas sweep safe.
    """

    sub: np.ndarray = field(repr=False)
    diag: np.ndarray = field(repr=False)
    sup: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    n_first: int = 0

    def solve(self) -> np.ndarray:
        return thomas(self.sub, self.diag, self.sup, self.rhs)


def oliver_system(k: float, n_lo: int, n_hi: int, gamma_slice: np.ndarray,
                  below: complex, above: complex) -> TridiagonalSystem:
    """Tridiagonal system for the unknowns ``eta_{n_lo} .. eta_{n_hi}``.

    Uses the recurrence at levels ``n = n_lo + 1 .. n_hi + 1``;
    ``gamma_slice`` holds the corresponding inhomogeneous terms, ``below``
    is the known ``eta_{n_lo - 1}`` and ``above`` the known ``eta_{n_hi + 1}``.
    """
    size = n_hi - n_lo + 1
    inv_ik = 1.0 / (1j * k)
    levels = np.arange(n_lo + 1, n_hi + 2)
    diag = (2.0 * inv_ik) * levels
    sub = np.full(size - 1, -1.0 + 0.0j)
    sup = np.full(size - 1, 1.0 + 0.0j)
    rhs = np.asarray(gamma_slice, dtype=complex).copy()
    rhs[0] += below
    rhs[-1] -= above
    return TridiagonalSystem(sub=sub, diag=diag, sup=sup, rhs=rhs, n_first=n_lo + 1)


def _u_integrals(n_max: int) -> np.ndarray:
    # integral_{-1}^{1} U_j dx = 2/(j+1) for even j, 0 for odd j
    u = np.zeros(n_max + 1)
    j = np.arange(0, n_max + 1, 2)
    u[0::2] = 2.0 / (j + 1.0)
    return u


def _jacobi_anger_sum(base: np.ndarray, N: int, k: float, m_top: int | None = None) -> complex:
    """Truncated Jacobi-Anger contraction of a non-oscillatory sequence.

    ``base`` holds real coefficients ``b_0 .. b_{N + M}``; returns

        J_0(k) b_N + sum_{m=1}^{N} i^m J_m (b_{N+m} + b_{N-m})
                   + sum_{m=N+1}^{M} i^m J_m (b_{N+m} - b_{m-N-2})

    with ``b_{-1} = 0`` and ``M = 25 + ceil(e k/2)`` by default.
    """
    mk = bessel_tail_length(k) if m_top is None else m_top
    if len(base) < N + mk + 1:
        raise ValueError("base sequence too short for the requested tail order")
    bess = bessel_j_sequence(k, mk)
    total = bess[0] * base[N]
    m1 = np.arange(1, min(N, mk) + 1)
    if len(m1):
        total += np.sum(_i_pow(m1) * bess[m1] * (base[N + m1] + base[N - m1]))
    m2 = np.arange(N + 1, mk + 1)
    if len(m2):
        low = np.where(m2 - N - 2 >= 0, base[np.maximum(m2 - N - 2, 0)], 0.0)
        total += np.sum(_i_pow(m2) * bess[m2] * (base[N + m2] - low))
    return complex(total)


def rho_sequence(k: float, N: int, m_top: int | None = None) -> np.ndarray:
    """Plane-wave moments ``rho_j(k) = integral U_j(x) e^{ikx} dx``, ``j = 0..N``.

    ``rho_0`` and ``rho_1`` have closed forms; the recurrence

        rho_n = rho_{n-2} - (2n/(ik)) rho_{n-1} + (2/(ik))(e^{ik} - (-1)^n e^{-ik})

    runs forward below ``floor(k)`` and the remaining entries solve the
    Oliver system, its final value seeded by the Jacobi-Anger contraction of
    the exact integrals ``integral U_j dx``.  Total cost ``O(N + k)``.
    """
    if k <= 0:
        raise ValueError("rho_sequence requires k > 0")
    if N < 0:
        raise ValueError("N must be nonnegative")
    inv_ik = 1.0 / (1j * k)
    eik = cmath.exp(1j * k)
    emik = cmath.exp(-1j * k)
    rho0 = 2.0 * math.sin(k) / k
    if N == 0:
        return np.array([rho0], dtype=complex)
    rho1 = 4.0 * inv_ik * (math.cos(k) - math.sin(k) / k)

    # forcing terms (2/(ik))(e^{ik} - (-1)^n e^{-ik}) for levels n = 2..N
    drive = np.empty(max(N - 1, 0), dtype=complex)
    drive[0::2] = (2.0 * inv_ik) * (eik - emik)  # even n
    drive[1::2] = (2.0 * inv_ik) * (eik + emik)  # odd n

    start = max(math.floor(k), 2)
    n_fwd = min(N, start - 1)
    out = np.empty(N + 1, dtype=complex)
    out[: n_fwd + 1] = rho_forward(complex(inv_ik), complex(rho0), complex(rho1),
                                   drive[: max(n_fwd - 1, 0)])
    if N < start:
        return out

    u = _u_integrals(N + (bessel_tail_length(k) if m_top is None else m_top))
    out[N] = _jacobi_anger_sum(u, N, k, m_top)
    if N > start:
        sys = oliver_system(k, start, N - 1, drive[start - 1:N - 1],
                            below=out[start - 1], above=out[N])
        out[start:N] = sys.solve()
    return out


def eta0_osc(alpha: float, k: float) -> complex:
    """Closed-form first moment ``eta_0(k) = integral log((x-a)^2) e^{ikx} dx``
    assembled from Si and Ci; purely real at ``alpha = 0`` and decaying like
    ``log`` terms over ``k``."""
    alpha = _check_alpha(alpha)
    if k <= 0:
        raise ValueError("eta0_osc requires k > 0")
    if abs(alpha) == 1.0:
        sgn = 1.0 if alpha > 0 else -1.0
        si2k = si(2.0 * k).value
        ci2k = ci(2.0 * k).value
        g = 0.5772156649015328606065120900824024
        re = (2.0 / k) * (-(g - ci2k + math.log(k / 2.0)) * math.sin(k) - si2k * math.cos(k))
        im = (2.0 / k) * ((g - ci2k + math.log(2.0 * k)) * math.cos(k) - si2k * math.sin(k))
        return complex(re, sgn * im)
    sip = si((1.0 + alpha) * k).value
    sim = si((1.0 - alpha) * k).value
    cip = ci((1.0 + alpha) * k).value
    cim = ci((1.0 - alpha) * k).value
    sak = math.sin(alpha * k)
    cak = math.cos(alpha * k)
    re = (2.0 / k) * (
        math.log(1.0 - alpha * alpha) * math.sin(k)
        + sak * (cip - cim)
        - cak * (sip + sim)
    )
    im = (2.0 / k) * (
        math.log((1.0 + alpha) / (1.0 - alpha)) * math.cos(k)
        + cak * (cim - cip)
        - sak * (sim + sip)
    )
    return complex(re, im)


def gamma_osc(alpha: float, k: float, N: int) -> np.ndarray:
    """Inhomogeneous terms ``(gamma_1(k), ..., gamma_N(k))`` of the
    oscillatory recurrence.

    ``gamma_n = (2/(ik)) B_n - (4/(ik)) [2 S_n + rho_{n-1}] + 2 T_n(a) eta_0(k)``
    with boundary part ``B_n = (1-T_n(a)) log((1-a)^2) e^{ik} +
    ((-1)^{n+1} + T_n(a)) log((1+a)^2) e^{-ik}`` (each ``x log x``-style
    factor taking its limit at ``a = +-1``).  The ``S_n`` sums for all ``n``
    come from one convolution in ``O(N log N)``.
    """
    alpha = _check_alpha(alpha)
    if k <= 2:
        raise ValueError("oscillatory weights are defined for k > 2")
    if N < 1:
        return np.empty(0, dtype=complex)
    inv_ik = 1.0 / (1j * k)
    rho = rho_sequence(k, max(N - 1, 0))
    t_row = chebyshev_t_row(alpha, N)
    eta0 = eta0_osc(alpha, k)

    n = np.arange(1, N + 1)
    tn = t_row[1:]
    eik = cmath.exp(1j * k)
    emik = cmath.exp(-1j * k)
    b = np.zeros(N, dtype=complex)
    if alpha != 1.0:
        b += (1.0 - tn) * (2.0 * math.log1p(-alpha) if alpha != -1.0 else 2.0 * math.log(2.0)) * eik
    if alpha != -1.0:
        sign = np.where(n % 2 == 1, 1.0, -1.0)  # (-1)^(n+1)
        b += (sign + tn) * (2.0 * math.log1p(alpha)) * emik

    s_n = _conv_sums(alpha, rho, N)
    gamma = (2.0 * inv_ik) * b - (4.0 * inv_ik) * (2.0 * s_n + rho[:N]) + 2.0 * tn * eta0
    return gamma


def _conv_sums(alpha: float, rho: np.ndarray, N: int) -> np.ndarray:
    """``S_n = sum_{j=0}^{n-2} T_{n-1-j}(alpha) rho_j``, ``n = 1..N``."""
    r = rho[:N]
    if alpha == 1.0:
        v = np.cumsum(r)
    elif alpha == -1.0:
        signs = np.ones(N)
        signs[1::2] = -1.0
        v = signs * np.cumsum(signs * r)
    elif alpha == 0.0:
        v = np.empty(N, dtype=complex)
        for start in (0, 1):
            block = r[start::2]
            s = np.ones(len(block))
            s[1::2] = -1.0
            v[start::2] = s * np.cumsum(s * block)
    else:
        t_row = chebyshev_t_row(alpha, N - 1)
        if N < CONV_FFT_MIN:
            v = np.convolve(t_row, r)[:N]
        else:
            v = fftconvolve(t_row, r)[:N]
    # S_n = V_{n-1} - T_0 rho_{n-1}; the n = 1 entry vanishes identically
    s_n = np.asarray(v - r, dtype=complex)
    s_n[0] = 0.0
    return s_n


def eta_forward(alpha: float, k: float, M: int | None = None,
                gamma: np.ndarray | None = None, eta0: complex | None = None) -> np.ndarray:
    """Forward-recurrence moments ``(eta_0(k), ..., eta_M(k))``.

    Valid only for ``M <= floor(k) - 1``; past that index the recurrence
    amplifies perturbations explosively and callers must switch to
    :func:`eta_oliver`.
    """
    alpha = _check_alpha(alpha)
    if k <= 2:
        raise ValueError("oscillatory weights are defined for k > 2")
    top = math.floor(k) - 1
    if M is None:
        M = top
    if M > top:
        raise ValueError(f"forward recurrence is unstable past n = floor(k)-1 = {top}")
    if M < 0:
        raise ValueError("M must be nonnegative")
    if eta0 is None:
        eta0 = eta0_osc(alpha, k)
    if gamma is None:
        gamma = gamma_osc(alpha, k, M) if M >= 1 else np.empty(0, dtype=complex)
    return osc_forward(1.0 / (1j * k), complex(eta0), np.asarray(gamma[:M], dtype=complex))


def eta_tail(alpha: float, k: float, N: int, m_top: int | None = None) -> complex:
    """Final moment ``eta_N(k)`` from the Jacobi-Anger expansion.

    Contracts Bessel values against the non-oscillatory moments up to index
    ``N + M(k)`` with ``M(k) = 25 + ceil(e k/2)``:

        eta_N(k) = J_0(k) eta_N + sum_{m=1}^{N} i^m J_m (eta_{N+m} + eta_{N-m})
                   + sum_{m>N}^{M(k)} i^m J_m (eta_{N+m} - eta_{m-N-2}).
    """
    alpha = _check_alpha(alpha)
    if N < math.floor(k):
        raise ValueError("the tail formula is used only for N >= floor(k)")
    mk = bessel_tail_length(k) if m_top is None else m_top
    base = eta_nonosc(alpha, N + mk)
    return _jacobi_anger_sum(base, N, k, mk)


def eta_oliver(alpha: float, k: float, N: int) -> OscWeightTable:
    """Full weight table for ``N >= floor(k)`` (Oliver branch).

    Runs the forward recurrence to ``floor(k) - 1``, seeds ``eta_N(k)`` from
    the Jacobi-Anger tail, solves the row-dominant tridiagonal system for
    the moments in between by a pivot-free Thomas sweep in
    ``O(N - floor(k))``, and assembles ``xi`` by halved differences.
    """
    alpha = _check_alpha(alpha)
    if k <= 2:
        raise ValueError("oscillatory weights are defined for k > 2")
    nk = math.floor(k)
    if N < nk:
        raise ValueError("eta_oliver requires N >= floor(k); use eta_forward below it")
    gamma = gamma_osc(alpha, k, N)
    fwd = eta_forward(alpha, k, nk - 1, gamma=gamma)
    tail = eta_tail(alpha, k, N)
    eta = np.empty(N + 1, dtype=complex)
    eta[:nk] = fwd
    eta[N] = tail
    if N > nk:
        sys = oliver_system(k, nk, N - 1, gamma[nk:N], below=fwd[nk - 1], above=tail)
        eta[nk:N] = sys.solve()
    return OscWeightTable(alpha=alpha, k=float(k), N=N, eta=eta, xi=xi_from_eta(eta))


def osc_weight_table(alpha: float, k: float, N: int) -> OscWeightTable:
    """Weight table for any ``N >= 0`` at ``k > 2``: purely forward when
    ``N <= floor(k) - 1``, forward plus Oliver system otherwise."""
    if k <= 2:
        raise ValueError("oscillatory weights are defined for k > 2")
    if N <= math.floor(k) - 1:
        eta = eta_forward(alpha, k, N)
        return OscWeightTable(alpha=float(alpha), k=float(k), N=N, eta=eta, xi=xi_from_eta(eta))
    return eta_oliver(alpha, k, N)
