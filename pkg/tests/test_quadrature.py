"""The assembled rule: dispatch, exactness, refinement, convergence orders."""

import math

import numpy as np
import pytest

from fcclog.chebyshev import eval_T
from fcclog.oracle import reference_integral, reference_weight
from fcclog.osc_weights import osc_weight_table
from fcclog.quadrature import (
    FOLD_THRESHOLD,
    QuadParams,
    empirical_order,
    fcc_integrate,
    fcc_refine,
    integrate_log_oscillatory,
)


def exp5(x):
    return np.cos(4.0 * x) / (x * x + x + 1.0)


def test_params_validation():
    with pytest.raises(ValueError):
        QuadParams(alpha=1.5, k=0.0, N=4)
    with pytest.raises(ValueError):
        QuadParams(alpha=0.0, k=-1.0, N=4)
    with pytest.raises(ValueError):
        QuadParams(alpha=0.0, k=0.0, N=0)


def test_dispatch_paths():
    res = fcc_integrate(exp5, QuadParams(alpha=0.0, k=2.0, N=8))
    assert res.path == "folded_nonoscillatory"  # ties fold
    res = fcc_integrate(exp5, QuadParams(alpha=0.0, k=2.01, N=8))
    assert res.path == "oscillatory"
    assert res.est_error is None
    assert FOLD_THRESHOLD == 2.0


def test_constant_returns_xi0():
    table = osc_weight_table(0.3, 9.0, 6)
    res = fcc_integrate(lambda x: np.ones_like(x), QuadParams(alpha=0.3, k=9.0, N=6))
    assert abs(res.value - table.xi[0]) <= 1e-15


def test_exactness_on_interpolation_space():
    # degree <= N polynomial: the rule reproduces sum c_n xi_n to round-off,
    # which the independent oracle confirms is the true integral
    def p(x):
        return 0.5 - 1.25 * x + np.asarray([eval_T(3, xx) for xx in np.atleast_1d(x)]).reshape(np.shape(x))

    for alpha, k in [(0.5, 7.0), (0.0, 30.0), (1.0, 12.5)]:
        got = fcc_integrate(p, QuadParams(alpha=alpha, k=k, N=8)).value
        want = reference_integral(p, alpha, k, tol=1e-12)
        assert abs(got - want) <= 1e-11


def test_folded_path_against_oracle():
    got = fcc_integrate(exp5, QuadParams(alpha=0.5, k=1.3, N=40)).value
    want = reference_integral(exp5, 0.5, 1.3, tol=1e-12)
    assert abs(got - want) <= 1e-12


def test_path_consistency_near_threshold():
    # k just above the fold threshold: oscillatory tables vs folding agree
    k = 2.01
    osc = fcc_integrate(exp5, QuadParams(alpha=0.25, k=k, N=32)).value
    nodes_value = fcc_integrate(lambda x: exp5(x) * np.exp(1j * k * x),
                                QuadParams(alpha=0.25, k=0.0, N=32)).value
    assert abs(osc - nodes_value) <= 1e-10


def test_negative_k_conjugation():
    res_neg = integrate_log_oscillatory(exp5, 0.5, -9.0, 48)
    want = reference_integral(exp5, 0.5, -9.0, tol=1e-12)
    assert abs(res_neg.value - want) <= 1e-11
    res_pos = integrate_log_oscillatory(exp5, 0.5, 9.0, 48)
    assert abs(res_neg.value - np.conj(res_pos.value)) <= 1e-14


def test_refine_smooth_terminates():
    res = fcc_refine(exp5, QuadParams(alpha=0.0, k=0.0, N=8),
                     target_tol=1e-12, max_N=256)
    assert res.converged and res.N_used <= 64
    assert res.est_error is not None and res.est_error <= 1e-12
    want = reference_integral(exp5, 0.0, 0.0, tol=1e-12)
    assert abs(res.value - want) <= 1e-11


def test_refine_polynomial_immediately_exact():
    coeffs = np.array([0.1, -2.0, 0.0, 0.25, 0.0, 0.0, 1.0, 0.0, -0.5])

    def poly(x):
        return np.polynomial.polynomial.polyval(x, coeffs)

    res = fcc_refine(poly, QuadParams(alpha=0.5, k=0.0, N=8),
                     target_tol=1e-13, max_N=64)
    assert res.converged and res.N_used == 16
    assert res.est_error <= 1e-13


def test_refine_reuses_samples():
    calls = {"n": 0}

    def counted(x):
        calls["n"] += np.size(x)
        return exp5(np.asarray(x))

    fcc_refine(counted, QuadParams(alpha=0.0, k=0.0, N=8),
               target_tol=1e-30, max_N=32)
    assert calls["n"] == 33  # 9 + 8 + 16: nesting reuses every old sample


def test_refine_reports_nonconvergence():
    rough = lambda x: np.abs(0.5 + x) ** 0.5
    res = fcc_refine(rough, QuadParams(alpha=0.0, k=0.0, N=8),
                     target_tol=1e-14, max_N=32)
    assert not res.converged
    assert res.N_used == 32
    assert res.est_error is not None


def test_refine_validates_max_n():
    with pytest.raises(ValueError):
        fcc_refine(exp5, QuadParams(alpha=0.0, k=0.0, N=8), 1e-10, max_N=10)


def test_k_robustness_fixed_n():
    # for fixed N and smooth f the error never grows with k
    errors = []
    for k in (1e2, 1e3, 1e4):
        ref = fcc_integrate(exp5, QuadParams(alpha=0.0, k=k, N=192)).value
        val = fcc_integrate(exp5, QuadParams(alpha=0.0, k=k, N=12)).value
        errors.append(abs(val - ref))
    assert errors[1] <= 1.5 * errors[0]
    assert errors[2] <= 1.5 * errors[1]


def test_empirical_order_smooth_superalgebraic():
    order = empirical_order(exp5, 0.0, 0.0, [8, 12, 16, 24, 32, 48])
    assert order >= 8.0


def test_empirical_order_endpoint_branch():
    order = empirical_order(lambda x: np.sqrt(1.0 + x), 0.0, 0.0, [12, 24, 48, 96])
    assert 3.3 <= order <= 5.0


def test_empirical_order_interior_kink():
    order = empirical_order(lambda x: np.abs(0.5 + x) ** 1.5, 0.0, 0.0,
                            [12, 24, 48, 96])
    assert 2.1 <= order <= 3.0


def test_empirical_order_validates_list():
    with pytest.raises(ValueError):
        empirical_order(exp5, 0.0, 0.0, [8, 8, 16])
    with pytest.raises(ValueError):
        empirical_order(exp5, 0.0, 0.0, [8, 16])


def test_scalar_only_integrand():
    def f(x):
        if np.ndim(x):
            raise TypeError("scalar only")
        return math.cos(x)

    res = fcc_integrate(f, QuadParams(alpha=0.0, k=0.0, N=24))
    want = reference_integral(lambda x: np.cos(x), 0.0, 0.0, tol=1e-12)
    assert abs(res.value - want) <= 1e-12


def test_high_k_spot_cells_alpha1():
    # converged-rule errors at extreme oscillation, order-of-magnitude level
    ref = fcc_integrate(exp5, QuadParams(alpha=1.0, k=1e5, N=192)).value
    e23 = abs(fcc_integrate(exp5, QuadParams(alpha=1.0, k=1e5, N=23)).value - ref)
    e47 = abs(fcc_integrate(exp5, QuadParams(alpha=1.0, k=1e5, N=47)).value - ref)
    assert 1.48e-16 <= e23 <= 1.48e-14
    assert e47 <= 1.10e-18


def test_weight_recovery_through_rule():
    # running the rule on T_n recovers the weight itself (k <= 2 fold)
    n, alpha = 5, 0.5
    got = fcc_integrate(lambda x: np.cos(n * np.arccos(np.clip(x, -1, 1))),
                        QuadParams(alpha=alpha, k=1.0, N=40)).value
    want = reference_weight(n, alpha, 1.0, tol=1e-12)
    assert abs(got - want) <= 1e-12
