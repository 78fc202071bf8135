"""Filon-Clenshaw-Curtis quadrature for oscillatory integrals with
logarithmic singularities:

    integral_{-1}^{1} f(x) log((x - alpha)^2) e^{ikx} dx,
    alpha in [-1, 1], k >= 0,

with stable O(N log N) weight generation, uniformly valid in k.
"""

from .chebyshev import (
    ChebInterpolant,
    NodeGrid,
    chebyshev_t_row,
    difference_quotient_coeffs,
    eval_T,
    eval_U,
    integral_T,
    interpolate,
    node_grid,
)
from .log_weights import LogWeightTable, eta_nonosc, xi_nonosc
from .oracle import (
    GradedMesh,
    OracleConvergenceError,
    build_graded_mesh,
    highprec_recurrence_replay,
    reference_integral,
    reference_weight,
    reference_weight_batch,
)
from .osc_weights import (
    OscWeightTable,
    TridiagonalSystem,
    eta0_osc,
    eta_forward,
    eta_oliver,
    eta_tail,
    gamma_osc,
    osc_weight_table,
    rho_sequence,
)
from .quadrature import (
    QuadParams,
    QuadResult,
    empirical_order,
    fcc_integrate,
    fcc_refine,
    integrate_log_oscillatory,
)
from .special import SpecialValue, bessel_j01, bessel_j_sequence, bessel_tail_length, ci, si

__version__ = "0.1.0"

__all__ = [
    "ChebInterpolant",
    "NodeGrid",
    "chebyshev_t_row",
    "difference_quotient_coeffs",
    "eval_T",
    "eval_U",
    "integral_T",
    "interpolate",
    "node_grid",
    "LogWeightTable",
    "eta_nonosc",
    "xi_nonosc",
    "GradedMesh",
    "OracleConvergenceError",
    "build_graded_mesh",
    "highprec_recurrence_replay",
    "reference_integral",
    "reference_weight",
    "reference_weight_batch",
    "OscWeightTable",
    "TridiagonalSystem",
    "eta0_osc",
    "eta_forward",
    "eta_oliver",
    "eta_tail",
    "gamma_osc",
    "osc_weight_table",
    "rho_sequence",
    "QuadParams",
    "QuadResult",
    "empirical_order",
    "fcc_integrate",
    "fcc_refine",
    "integrate_log_oscillatory",
    "SpecialValue",
    "bessel_j01",
    "bessel_j_sequence",
    "bessel_tail_length",
    "ci",
    "si",
]
