"""Chebyshev polynomials, node grids, and fast interpolation.

Everything downstream (weight recurrences, the quadrature rule itself) is
expressed in the first- and second-kind Chebyshev bases.  This module keeps
that machinery in one place:

* pointwise evaluation of ``T_n`` and ``U_n`` (trigonometric form),
* the practical-abscissa grid ``cos(j*pi/N)``, ``j = 0..N``, stored
  high-to-low so the size-``2N`` grid contains the size-``N`` grid at its
  even indices,
* coefficient extraction from samples by a type-I DCT in ``O(N log N)``,
  normalised so that ``sum(c[n] * T_n)`` reproduces the samples with no
  primed-sum convention leaking to callers,
* the divided-difference expansion ``(T_n(x) - T_n(y))/(x - y)`` in the
  ``U_j(x)`` basis, which drives the oscillatory weight recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.fft import dct

__all__ = [
    "ChebInterpolant",
    "NodeGrid",
    "eval_T",
    "eval_U",
    "integral_T",
    "chebyshev_t_row",
    "interpolate",
    "difference_quotient_coeffs",
    "node_grid",
]

# Arguments may stray past [-1, 1] by round-off (e.g. mapped panel nodes);
# anything further out is a genuine domain error.
_DOMAIN_SLACK = 1e-12


def _checked_clip(x: float) -> float:
    if abs(x) > 1.0 + _DOMAIN_SLACK:
        raise ValueError(f"argument {x!r} lies outside [-1, 1]")
    return min(1.0, max(-1.0, float(x)))


def eval_T(n: int, x: float) -> float:
    """First-kind Chebyshev polynomial ``T_n(x) = cos(n*arccos(x))``.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    x : float
        Point in ``[-1, 1]`` (a ``1e-12`` slack absorbs round-off).

    Returns
    -------
    float
        ``T_n(x)``, bounded by 1 in magnitude.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    xc = _checked_clip(x)
    if xc == 1.0:
        return 1.0
    if xc == -1.0:
        return 1.0 if n % 2 == 0 else -1.0
    return float(np.cos(n * np.arccos(xc)))


def eval_U(n: int, x: float) -> float:
    """Second-kind Chebyshev polynomial ``U_n(x) = sin((n+1)t)/sin(t)``,
    ``x = cos(t)``, with the convention ``U_{-1} = 0``.

    ``|U_n| <= n + 1``, the bound being attained at ``x = +-1``.
    """
    if n < -1:
        raise ValueError("degree must be >= -1")
    if n == -1:
        return 0.0
    xc = _checked_clip(x)
    if xc == 1.0:
        return float(n + 1)
    if xc == -1.0:
        return float((n + 1) * (1 if n % 2 == 0 else -1))
    theta = np.arccos(xc)
    return float(np.sin((n + 1) * theta) / np.sin(theta))


def integral_T(n: int) -> float:
    """Exact value of ``integral_{-1}^{1} T_n(x) dx``.

    ``-2/(n^2 - 1)`` for even ``n`` (so ``2`` at ``n = 0``), ``0`` for odd.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n % 2 == 1:
        return 0.0
    return -2.0 / (n * n - 1.0)


def chebyshev_t_row(x: float, n_max: int) -> np.ndarray:
    """Vector ``(T_0(x), ..., T_{n_max}(x))`` for a fixed point ``x``.

    Uses exact values at the grid-symmetry points ``x in {-1, 0, 1}`` so the
    sparsity patterns the weight assembly relies on hold to the bit.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    n = np.arange(n_max + 1)
    if x == 1.0:
        return np.ones(n_max + 1)
    if x == -1.0:
        out = np.ones(n_max + 1)
        out[1::2] = -1.0
        return out
    if x == 0.0:
        out = np.zeros(n_max + 1)
        out[0::4] = 1.0
        out[2::4] = -1.0
        return out
    xc = _checked_clip(x)
    return np.cos(n * np.arccos(xc))


@dataclass(frozen=True)
class NodeGrid:
    """Chebyshev practical abscissae ``cos(j*pi/N)``, high-to-low.

    ``nodes[0] = 1`` and ``nodes[N] = -1``; the grid of size ``2N`` contains
    this one as its even-index subset, which is what makes nested refinement
    cheap.
    """

    N: int
    nodes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("a node grid needs N >= 1")
        self.nodes.setflags(write=False)


def node_grid(N: int) -> NodeGrid:
    """Build the ``N + 1`` point grid ``cos(j*pi/N)``, ``j = 0..N``."""
    if N < 1:
        raise ValueError("a node grid needs N >= 1")
    j = np.arange(N + 1)
    nodes = np.cos(np.pi * j / N)
    nodes[0] = 1.0
    nodes[N] = -1.0
    if N % 2 == 0:
        nodes[N // 2] = 0.0
    return NodeGrid(N=N, nodes=nodes)


@dataclass(frozen=True)
class ChebInterpolant:
    """Degree-``N`` expansion ``sum_{n=0}^{N} coeffs[n] * T_n``.

    Produced by :func:`interpolate`; evaluating it at the generating grid
    reproduces the samples to round-off.
    """

    N: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("degree must be nonnegative")
        if len(self.coeffs) != self.N + 1:
            raise ValueError("coeffs must have length N + 1")
        self.coeffs.setflags(write=False)

    def __call__(self, x):
        """Evaluate the expansion at ``x`` (scalar or array) by Clenshaw."""
        x = np.asarray(x)
        b1 = np.zeros_like(x, dtype=self.coeffs.dtype)
        b2 = np.zeros_like(b1)
        two_x = 2.0 * x
        for c in self.coeffs[:0:-1]:
            b1, b2 = two_x * b1 - b2 + c, b1
        return x * b1 - b2 + self.coeffs[0]


def interpolate(samples) -> ChebInterpolant:
    """Chebyshev coefficients of the interpolant through grid samples.

    Parameters
    ----------
    samples : array_like
        Values ``f(cos(j*pi/N))`` for ``j = 0..N`` (length ``N + 1``,
        ``N >= 1``), real or complex.

    Returns
    -------
    ChebInterpolant
        The unique degree-``N`` expansion matching the samples, computed by
        a type-I DCT in ``O(N log N)``.
    """
    samples = np.asarray(samples)
    if samples.ndim != 1 or len(samples) < 2:
        raise ValueError("need a 1-d array of N + 1 >= 2 samples")
    N = len(samples) - 1
    coeffs = dct(samples, type=1) / N
    coeffs[0] *= 0.5
    coeffs[N] *= 0.5
    return ChebInterpolant(N=N, coeffs=coeffs)


def difference_quotient_coeffs(n: int, y: float) -> np.ndarray:
    """Coefficients of ``(T_n(x) - T_n(y))/(x - y)`` in the ``U_j(x)`` basis.

    Returns the length-``n`` vector ``(2*T_{n-1}(y), ..., 2*T_1(y), 1)``,
    i.e. ``2*T_{n-1-j}(y)`` for ``j = 0..n-2`` and ``1`` at ``j = n-1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = 2.0 * chebyshev_t_row(y, n - 1)[::-1]
    out[-1] = 1.0
    return out
