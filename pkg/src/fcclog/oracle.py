"""Independent brute-force references for weights and integrals.

Everything here is deliberately slow and structurally independent of the
recurrence machinery: integrals are computed by composite Clenshaw-Curtis
panels on meshes graded algebraically toward the singular points, with the
panels actually touching a singularity handled by a tanh-sinh rule (a plain
CC panel would place a node on the singularity itself).  Panels are further
split so none spans more than a few oscillation periods.  All node/weight
arithmetic runs in 80-bit ``numpy.longdouble``; the extended-precision replay
of the non-oscillatory recurrence uses ``mpmath``.

Every public operation carries a self-consistency check: the value is
recomputed on a refined mesh at a higher panel order and the two must agree
to the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp
import numpy as np

__all__ = [
    "GradedMesh",
    "OracleConvergenceError",
    "build_graded_mesh",
    "reference_integral",
    "reference_weight",
    "reference_weight_batch",
    "highprec_recurrence_replay",
]

LD = np.longdouble

# Mesh defaults: algebraic grading exponent and level count toward each
# singular point, per-panel CC order, and the oscillation-resolution limit.
# The phase budget counts both the plane wave (k * width) and, for weight
# integrands, the Chebyshev band (n * arccos-width); 2.5 periods at order 40
# keeps the per-panel truncation below 1e-15.
GRADING_EXPONENT = 3.0
GRADING_LEVELS = 12
PANEL_ORDER = 40
MAX_PERIODS_PER_PANEL = 2.5
_TS_STEP = 1.0 / 32.0
_TS_TMAX = 4.5


class OracleConvergenceError(RuntimeError):
    """Raised when mesh refinement fails to confirm the requested tolerance."""

    def __init__(self, message: str, value: complex, achieved: float):
        super().__init__(message)
        self.value = value
        self.achieved = achieved


@dataclass(frozen=True)
class GradedMesh:
    """Panel decomposition of [-1, 1] graded toward the singular points.

    ``panels`` is a tuple of ``(a, b, s)`` with ``s`` the singular point
    sitting on one edge of the panel, or ``nan`` for an interior (smooth)
    panel.  Panel edges accumulate toward each singular point like
    ``(j / levels)**q`` and their union is exactly [-1, 1].
    """

    singular_points: tuple
    q: float
    levels: int
    panels: tuple = field(repr=False)


def _panel_phase(a, b, k: float, band: float) -> float:
    # total phase a degree-`band` Chebyshev polynomial times e^{ikx} sweeps
    # across the panel
    width = float(b - a)
    phase = abs(k) * width
    if band > 0:
        dtheta = float(np.arccos(max(a, LD(-1))) - np.arccos(min(b, LD(1))))
        phase += band * dtheta
    return phase


def build_graded_mesh(alpha: float, k: float = 0.0, q: float = GRADING_EXPONENT,
                      levels: int = GRADING_LEVELS, extra_singular=(),
                      max_periods: float = MAX_PERIODS_PER_PANEL,
                      band: float = 0.0) -> GradedMesh:
    """Mesh for integrands ``g(x) log((x - alpha)^2) e^{ikx}``.

    Grades toward -1, 1, ``alpha`` (when interior) and any caller-declared
    non-smooth points of the density, then splits wide panels until each
    carries at most ``max_periods`` periods of combined phase: plane-wave
    phase ``k * width`` plus, when the density contains Chebyshev content up
    to degree ``band``, the arccos-metric phase ``band * delta(theta)``.
    """
    if q < 1:
        raise ValueError("grading exponent must be >= 1")
    points = {-1.0, 1.0}
    if abs(alpha) < 1.0:
        points.add(float(alpha))
    for s in extra_singular:
        s = float(s)
        if not -1.0 <= s <= 1.0:
            raise ValueError("singular points must lie in [-1, 1]")
        points.add(s)
    base = sorted(points)

    ratios = (np.arange(levels + 1, dtype=LD) / LD(levels)) ** LD(q)
    panels = []
    for a, b in zip(base[:-1], base[1:]):
        a_ld, b_ld = LD(a), LD(b)
        mid = (a_ld + b_ld) / 2
        left = a_ld + (mid - a_ld) * ratios
        right = b_ld - (b_ld - a_ld) / 2 * ratios
        for j in range(levels):
            panels.append((left[j], left[j + 1], a if j == 0 else math.nan))
        for j in range(levels - 1, -1, -1):
            panels.append((right[j + 1], right[j], b if j == 0 else math.nan))

    if k != 0 or band > 0:
        budget = max_periods * 2.0 * math.pi
        queue = list(panels)
        split = []
        while queue:
            a, b, s = queue.pop(0)
            phase = _panel_phase(a, b, k, band)
            if not math.isnan(s) or phase <= budget:
                split.append((a, b, s))
                continue
            m = math.ceil(phase / budget)
            edges = a + (b - a) * np.arange(m + 1, dtype=LD) / m
            queue.extend((edges[i], edges[i + 1], math.nan) for i in range(m))
        split.sort(key=lambda p: float(p[0]))
        panels = split

    return GradedMesh(singular_points=tuple(base), q=float(q), levels=int(levels),
                      panels=tuple(panels))


@lru_cache(maxsize=8)
def _cc_rule(order: int):
    # Clenshaw-Curtis nodes cos(j pi / p) and weights in longdouble
    p = order
    j = np.arange(p + 1, dtype=LD)
    theta = j * LD(np.pi) / p
    nodes = np.cos(theta)
    weights = np.zeros(p + 1, dtype=LD)
    for jj in range(p + 1):
        acc = LD(1)
        for m in range(1, p // 2 + 1):
            bm = LD(1) if 2 * m == p else LD(2)
            acc -= bm * np.cos(2 * m * theta[jj]) / LD(4 * m * m - 1)
        cj = LD(1) if jj in (0, p) else LD(2)
        weights[jj] = cj * acc / p
    return nodes, weights


@lru_cache(maxsize=8)
def _ts_rule(step: float, tmax: float):
    # tanh-sinh rule for integral_0^1 G(sigma) d-sigma with a singular edge at 0:
    # sigma = logistic(pi sinh t); returns (sigma, 1 - sigma guard, weights)
    t = np.arange(-tmax, tmax + step / 2, step, dtype=LD)
    z = LD(np.pi) * np.sinh(t)
    small = np.exp(-np.abs(z))
    small = small / (1 + small)  # min(sigma, 1-sigma), relative-accurate
    sigma = np.where(z < 0, small, 1 - small)
    dsig = small * (1 - small) * LD(np.pi) * np.cosh(t)
    return sigma, dsig * LD(step)


def _mesh_nodes(mesh: GradedMesh, alpha: float, order: int, ts_step: float, ts_tmax: float):
    """Flatten the mesh into evaluation nodes, weights, and log-kernel values.

    On a panel whose singular edge is the log point itself, the distance to
    the singularity is carried exactly through the tanh-sinh substitution, so
    ``log((x - alpha)^2)`` never suffers subtraction cancellation.
    """
    ccx, ccw = _cc_rule(order)
    sig, dsig = _ts_rule(ts_step, ts_tmax)
    xs, ws, lg = [], [], []
    for a, b, s in mesh.panels:
        if math.isnan(s):
            half = (b - a) / 2
            x = (a + b) / 2 + half * ccx
            w = half * ccw
            u = None
        else:
            h = b - a
            u = h * sig
            x = a + u if s == float(a) else b - u
            w = h * dsig
        xs.append(x)
        ws.append(w)
        if u is not None and s == alpha:
            lg.append(2 * np.log(u))
        else:
            lg.append(np.log((x - LD(alpha)) ** 2))
    return np.concatenate(xs), np.concatenate(ws), np.concatenate(lg)


def _kernel_base(mesh: GradedMesh, alpha: float, k: float, order: int,
                 ts_step: float = _TS_STEP, ts_tmax: float = _TS_TMAX):
    x, w, lg = _mesh_nodes(mesh, alpha, order, ts_step, ts_tmax)
    phase = LD(k) * x
    wre = w * lg * np.cos(phase)
    wim = w * lg * np.sin(phase)
    return x, wre, wim


def _weights_pass(n_max: int, alpha: float, k: float, order: int, levels: int,
                  max_periods: float, ts_step: float) -> np.ndarray:
    mesh = build_graded_mesh(alpha, k=k, levels=levels, max_periods=max_periods,
                             band=float(n_max))
    x, wre, wim = _kernel_base(mesh, alpha, k, order, ts_step=ts_step)
    out = np.empty(n_max + 1, dtype=complex)
    t_prev = np.ones_like(x)
    t_cur = x.copy()
    out[0] = complex(float(np.sum(wre * t_prev)), float(np.sum(wim * t_prev)))
    if n_max >= 1:
        out[1] = complex(float(np.sum(wre * t_cur)), float(np.sum(wim * t_cur)))
    for n in range(2, n_max + 1):
        t_prev, t_cur = t_cur, 2 * x * t_cur - t_prev
        out[n] = complex(float(np.sum(wre * t_cur)), float(np.sum(wim * t_cur)))
    return out


def reference_weight_batch(n_max: int, alpha: float, k: float, tol: float = 1e-12) -> np.ndarray:
    """Direct graded-mesh values of ``integral T_n log((x-a)^2) e^{ikx} dx``
    for all ``n = 0..n_max`` in one sweep (shared kernel factors, Chebyshev
    rows by recurrence).  Raises :class:`OracleConvergenceError` when the
    refined pass disagrees beyond ``tol``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if not abs(alpha) <= 1:
        raise ValueError("alpha must lie in [-1, 1]")
    coarse = _weights_pass(n_max, alpha, k, PANEL_ORDER, GRADING_LEVELS,
                           MAX_PERIODS_PER_PANEL, _TS_STEP)
    fine = _weights_pass(n_max, alpha, k, PANEL_ORDER + 12, GRADING_LEVELS + 3,
                         MAX_PERIODS_PER_PANEL / 2, _TS_STEP / 1.25)
    achieved = float(np.max(np.abs(coarse - fine)))
    if achieved > tol:
        raise OracleConvergenceError(
            f"weight oracle stalled at {achieved:.3e} > tol {tol:.3e}",
            value=fine[n_max], achieved=achieved)
    return fine


def reference_weight(n: int, alpha: float, k: float, tol: float = 1e-12) -> complex:
    """Single weight ``integral T_n log((x-a)^2) e^{ikx} dx`` by the same
    mesh machinery (desk scale: ``n <= 64`` is the intended regime)."""
    return complex(reference_weight_batch(n, alpha, k, tol)[n])


def _integral_pass(f, alpha: float, k: float, singularities, order: int,
                   levels: int, max_periods: float, ts_step: float) -> complex:
    mesh = build_graded_mesh(alpha, k=k, levels=levels, extra_singular=singularities,
                             max_periods=max_periods)
    x, wre, wim = _kernel_base(mesh, alpha, k, order, ts_step=ts_step)
    fv = np.asarray(f(np.asarray(x, dtype=float)))
    return complex(float(np.sum(wre * fv)), float(np.sum(wim * fv)))


def reference_integral(f, alpha: float, k: float, tol: float = 1e-12,
                       singularities=()) -> complex:
    """Reference value of ``integral f(x) log((x-a)^2) e^{ikx} dx``.

    ``singularities`` lists non-smooth points of ``f`` itself (the mesh is
    graded toward them as well).  Guarantee: a pass with halved panels and
    raised order moves the value by less than ``tol``, else
    :class:`OracleConvergenceError` carries the best value and the achieved
    agreement.
    """
    if tol < 1e-14:
        raise ValueError("tol below 1e-14 is not attainable by this oracle")
    if not abs(alpha) <= 1:
        raise ValueError("alpha must lie in [-1, 1]")
    coarse = _integral_pass(f, alpha, k, singularities, PANEL_ORDER,
                            GRADING_LEVELS, MAX_PERIODS_PER_PANEL, _TS_STEP)
    fine = _integral_pass(f, alpha, k, singularities, PANEL_ORDER + 12,
                          GRADING_LEVELS + 3, MAX_PERIODS_PER_PANEL / 2, _TS_STEP / 1.25)
    achieved = abs(coarse - fine)
    if achieved > tol:
        raise OracleConvergenceError(
            f"integral oracle stalled at {achieved:.3e} > tol {tol:.3e}",
            value=fine, achieved=achieved)
    return fine


def _mp_xlogx(t):
    return mp.mpf(0) if t == 0 else t * mp.log(t)


def highprec_recurrence_replay(alpha: float, N: int, dps: int = 34):
    """Non-oscillatory weight recurrence rerun in ``dps``-digit arithmetic.

    Ground truth for the double-precision table: returns the ``xi_0..xi_N``
    values as ``mpmath`` numbers.
    """
    if N > 1000:
        raise ValueError("the replay is a desk-scale oracle (N <= 1000)")
    if not abs(alpha) <= 1:
        raise ValueError("alpha must lie in [-1, 1]")
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        plus = _mp_xlogx(1 - a) + _mp_xlogx(1 + a)
        minus = _mp_xlogx(1 - a) - _mp_xlogx(1 + a)
        eta = [2 * plus - 4]
        prev2, prev1 = mp.mpf(0), eta[0]
        for n in range(1, N + 1):
            if n % 2 == 0:
                g = (4 * (plus + mp.mpf(2) / (n * n - 1))) / (n + 1)
            else:
                g = 4 * minus / (n + 1)
            val = (2 * a * n / (n + 1)) * prev1 - (mp.mpf(n - 1) / (n + 1)) * prev2 + g
            eta.append(val)
            prev2, prev1 = prev1, val
        xi = [eta[0]]
        if N >= 1:
            xi.append(eta[1] / 2)
        for n in range(2, N + 1):
            xi.append((eta[n] - eta[n - 2]) / 2)
    return xi
