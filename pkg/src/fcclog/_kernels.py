"""Jit-compiled inner loops: three-term recurrences and the Thomas solve.

These are the only genuinely sequential parts of the weight generation; the
rest of the pipeline is vectorised numpy / FFT work.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(cache=True)
def _two_prod(a, b):
    # Dekker product without fma
    p = a * b
    ca = 134217729.0 * a
    ah = ca - (ca - a)
    al = a - ah
    cb = 134217729.0 * b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit(cache=True)
def _dd_add(ah, al, bh, bl):
    sh, se = _two_sum(ah, bh)
    se += al + bl
    hi = sh + se
    return hi, se - (hi - sh)


@njit(cache=True)
def _dd_mul(ah, al, bh, bl):
    ph, pe = _two_prod(ah, bh)
    pe += ah * bl + al * bh
    hi = ph + pe
    return hi, pe - (hi - ph)


@njit(cache=True)
def _dd_div_d(nh, nl, d):
    q1 = (nh + nl) / d
    th, tl = _two_prod(q1, d)
    rh, rl = _dd_add(nh, nl, -th, -tl)
    q2 = (rh + rl) / d
    hi = q1 + q2
    return hi, q2 - (hi - q1)


@njit(cache=True)
def eta_log_forward_dd(alpha, eta0_h, eta0_l, gamma_h, gamma_l):
    """Compensated (double-double) run of the non-oscillatory recurrence.

    The inhomogeneous terms arrive as hi/lo pairs; coefficients are built in
    double-double from exact integer data, so the returned doubles carry
    essentially only the final representation rounding.
    """
    n_max = gamma_h.shape[0]
    out = np.empty(n_max + 1)
    out[0] = eta0_h + eta0_l
    p2h, p2l = 0.0, 0.0
    p1h, p1l = eta0_h, eta0_l
    two_a = 2.0 * alpha
    for n in range(1, n_max + 1):
        d = n + 1.0
        uh, ul = _two_prod(two_a, float(n))
        c1h, c1l = _dd_div_d(uh, ul, d)
        c2h, c2l = _dd_div_d(n - 1.0, 0.0, d)
        t1h, t1l = _dd_mul(c1h, c1l, p1h, p1l)
        t2h, t2l = _dd_mul(c2h, c2l, p2h, p2l)
        sh, sl = _dd_add(t1h, t1l, -t2h, -t2l)
        vh, vl = _dd_add(sh, sl, gamma_h[n - 1], gamma_l[n - 1])
        out[n] = vh + vl
        p2h, p2l = p1h, p1l
        p1h, p1l = vh, vl
    return out


@njit(cache=True)
def eta_log_forward(alpha, eta0, gamma):
    """Forward run of eta_n = (2*alpha*n/(n+1))*eta_{n-1}
    - ((n-1)/(n+1))*eta_{n-2} + gamma_n,  n = 1..len(gamma)."""
    n_max = gamma.shape[0]
    out = np.empty(n_max + 1)
    out[0] = eta0
    prev2 = 0.0
    prev1 = eta0
    for n in range(1, n_max + 1):
        val = (2.0 * alpha * n / (n + 1.0)) * prev1 - ((n - 1.0) / (n + 1.0)) * prev2 + gamma[n - 1]
        out[n] = val
        prev2 = prev1
        prev1 = val
    return out


@njit(cache=True)
def eta_log_forward_even(eta0, gamma_even):
    """Parity-reduced alpha = 0 run over even indices only.

    gamma_even[m-1] = gamma_{2m}; returns (eta_0, eta_2, ..., eta_{2M}).
    Performs bit-identical arithmetic to the general loop restricted to the
    surviving terms.
    """
    m_max = gamma_even.shape[0]
    out = np.empty(m_max + 1)
    out[0] = eta0
    prev = eta0
    for m in range(1, m_max + 1):
        n = 2.0 * m
        val = -(((n - 1.0) / (n + 1.0)) * prev) + gamma_even[m - 1]
        out[m] = val
        prev = val
    return out


@njit(cache=True)
def osc_forward(inv_ik, eta0, gamma):
    """Forward run of eta_n = gamma_n - 2*n*inv_ik*eta_{n-1} + eta_{n-2}
    with inv_ik = 1/(i*k); valid only while n stays below k."""
    n_max = gamma.shape[0]
    out = np.empty(n_max + 1, dtype=np.complex128)
    out[0] = eta0
    prev2 = 0.0 + 0.0j
    prev1 = eta0
    for n in range(1, n_max + 1):
        val = gamma[n - 1] - (2.0 * n) * inv_ik * prev1 + prev2
        out[n] = val
        prev2 = prev1
        prev1 = val
    return out


@njit(cache=True)
def rho_forward(inv_ik, rho0, rho1, drive):
    """Forward run of rho_n = rho_{n-2} - 2*n*inv_ik*rho_{n-1} + drive_n
    from the two closed-form starting values; drive holds levels 2..N."""
    n_max = drive.shape[0] + 1
    out = np.empty(n_max + 1, dtype=np.complex128)
    out[0] = rho0
    if n_max >= 1:
        out[1] = rho1
    for n in range(2, n_max + 1):
        out[n] = out[n - 2] - (2.0 * n) * inv_ik * out[n - 1] + drive[n - 2]
    return out


@njit(cache=True)
def thomas(sub, diag, sup, rhs):
    """Tridiagonal solve by forward elimination / back substitution.

    No pivoting: callers guarantee row dominance.  ``sub`` and ``sup`` have
    length ``n - 1``; ``sub[i-1]`` sits in row ``i``.
    """
    n = diag.shape[0]
    cp = np.empty(n - 1, dtype=diag.dtype)
    dp = np.empty(n, dtype=rhs.dtype)
    dp[0] = rhs[0] / diag[0]
    if n > 1:
        cp[0] = sup[0] / diag[0]
    for i in range(1, n):
        denom = diag[i] - sub[i - 1] * cp[i - 1]
        if i < n - 1:
            cp[i] = sup[i] / denom
        dp[i] = (rhs[i] - sub[i - 1] * dp[i - 1]) / denom
    x = np.empty(n, dtype=rhs.dtype)
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


@njit(cache=True)
def bessel_forward(k, j0, j1, n_top):
    """J_0..J_{n_top} by the forward recurrence J_{n+1} = (2n/k)J_n - J_{n-1};
    stable while the order stays below the argument."""
    out = np.empty(n_top + 1)
    out[0] = j0
    if n_top >= 1:
        out[1] = j1
    for n in range(1, n_top):
        out[n + 1] = (2.0 * n / k) * out[n] - out[n - 1]
    return out
