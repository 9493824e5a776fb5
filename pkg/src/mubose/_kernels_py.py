"""Series-summation kernels, pure-Python backend.

Every kernel accumulates in numpy extended precision (``long double``,
80-bit on x86-64) and mirrors, operation for operation, the compiled
backend in ``_kernels.pyx``.  The extra mantissa bits matter: the
partial-fraction coefficients of high orders are large and nearly
cancelling, and double precision alone cannot hold the closed-form
moment to the tolerances the rest of the package promises.

Kernels perform no argument validation and raise nothing on
non-convergence; they return ``(value, error_bound, terms_used)`` with a
rigorous truncation bound folded into ``error_bound`` and leave policy
to the calling module.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_LD = np.longdouble
_ONE = _LD(1)
_ZERO = _LD(0)

#: unit roundoff of the accumulation type
EPS = float(np.finfo(np.longdouble).eps)
_EPS_LD = _LD(np.finfo(np.longdouble).eps)
_DBL_EPS = _LD(2.220446049250313e-16)


def _a_tilde(mu: _LD, r: int) -> list:
    """Rescaled partial-fraction coefficients mu**(r-1) * A_l for order r.

    Built by the order-raising recurrence.  The rescaling keeps every
    coefficient O(1) for small mu, so the recurrence neither overflows
    nor loses the leading digits it would lose in the unscaled form.
    """
    coeffs = [_LD(-1)]
    for order in range(1, r):
        nxt = []
        for l in range(order):
            nxt.append(coeffs[l] * (mu + _ONE / _LD(order - l)))
        acc = _ZERO
        for l in range(order):
            acc += coeffs[l] / _LD(order - l)
        powm = _ONE
        for _ in range(order):
            powm *= mu
        nxt.append(-powm - acc)
        coeffs = nxt
    return coeffs


def a_coeff_values(r: int, mu: float) -> list:
    """Partial-fraction coefficients A_l(mu), l = 0..r-1, as floats."""
    mu_ld = _LD(mu)
    coeffs = _a_tilde(mu_ld, r)
    scale = _ONE
    for _ in range(r - 1):
        scale /= mu_ld
    return [float(c * scale) for c in coeffs]


def lerch_sum(z: float, a: float, atol: float, max_terms: int):
    """Direct summation of Phi(z, 1, a) = sum_n z^n / (a + n).

    Stops once the geometric tail bound z^(N+1)/((a+N+1)(1-z)) falls
    below ``atol``; if ``max_terms`` is exhausted first the returned
    error bound simply stays above ``atol``.
    """
    z_ld = _LD(z)
    a_ld = _LD(a)
    inv_gap = _ONE / (_ONE - z_ld)
    acc = _ZERO
    zn = _ONE
    n = 0
    while True:
        acc += zn / (a_ld + n)
        zn *= z_ld
        tail = zn / (a_ld + n + 1) * inv_gap
        n += 1
        if tail <= _LD(atol) or n >= max_terms:
            break
    err = tail + (_EPS_LD * (n + 4) + _DBL_EPS) * abs(acc)
    return float(acc), float(err), n


def closed_moment_sum(mu: float, alpha: float, r: int, rtol: float,
                      atol: float, max_terms: int):
    """Normalised r-th factorial-structure moment via the Lerch route.

    Evaluates (1-z) * sum_n z^n * prod_{l<r} phi(n-l) through the
    partial-fraction/Lerch representation, algebraically rearranged so
    that the exactly-vanishing orders z^0..z^(r-1) never enter the
    floating-point sum:

        M_r = -mu^(2-2r) * sum_{m>=r} z^m S_m,
        S_m = sum_{l<r} Atilde_l / ((1+mu(m-l)) (1+mu(m-l-1))),

    with Atilde_l = mu^(r-1) A_l the rescaled coefficients.  The
    rearrangement is an identity of the printed closed form; without it
    the assembly loses all significance once z^r is below roundoff.
    """
    mu_ld = _LD(mu)
    z = np.exp(-_LD(alpha))
    inv_gap = _ONE / (_ONE - z)
    coeffs = _a_tilde(mu_ld, r)
    big_k = _ZERO
    for l in range(r):
        big_k += abs(coeffs[l])
    scale = _ONE
    for _ in range(2 * r - 2):
        scale /= mu_ld

    acc = _ZERO
    abs_acc = _ZERO
    zm = _ONE
    for _ in range(r):
        zm *= z
    m = r
    terms = 0
    while True:
        s_val = _ZERO
        s_abs = _ZERO
        for l in range(r):
            t = coeffs[l] / ((_ONE + mu_ld * (m - l)) * (_ONE + mu_ld * (m - l - 1)))
            s_val += t
            s_abs += abs(t)
        acc += zm * s_val
        abs_acc += zm * s_abs
        zm *= z
        tail = big_k * zm / ((_ONE + mu_ld * (m + 2 - r)) * (_ONE + mu_ld * (m + 1 - r))) * inv_gap
        m += 1
        terms += 1
        if tail * scale <= max(_LD(atol), _LD(rtol) * abs(acc) * scale) or terms >= max_terms:
            break
    value = -acc * scale
    err = (tail + _EPS_LD * (2 * r + 6) * abs_acc) * scale + _DBL_EPS * abs(value)
    return float(value), float(err), terms


def oracle_moment_sum(mu: float, alpha: float, r: int, rtol: float,
                      atol: float, max_terms: int):
    """Brute-force moment (1-z) * sum_{n>=r} z^n * prod_{l<r} phi(n-l).

    Independent of the partial-fraction machinery: each term is a direct
    product of structure functions.  Terms with n < r vanish identically
    (one factor is phi(0) = 0) and are skipped.  The tail is bounded by
    n^r z^n handled geometrically.
    """
    mu_ld = _LD(mu)
    z = np.exp(-_LD(alpha))
    gap = _ONE - z
    acc = _ZERO
    zn = _ONE
    for _ in range(r):
        zn *= z
    n = r
    terms = 0
    while True:
        prod = _ONE
        for l in range(r):
            x = _LD(n - l)
            prod *= x / (_ONE + mu_ld * x)
        acc += prod * zn
        zn *= z
        # next term bounded by (n+1)^r z^(n+1); term ratio below rho
        rho = _ONE
        for _ in range(r):
            rho *= _LD(n + 2) / _LD(n + 1)
        rho *= z
        if rho < _ONE:
            bound = _ONE
            for _ in range(r):
                bound *= _LD(n + 1)
            tail = bound * zn / (_ONE - rho)
        else:
            tail = _LD(np.inf)
        n += 1
        terms += 1
        if gap * tail <= max(_LD(atol), _LD(rtol) * gap * acc) or terms >= max_terms:
            break
    value = gap * acc
    err = gap * tail + _EPS_LD * (2 * r + 8) * value + _DBL_EPS * value
    return float(value), float(err), terms


def power_sum(s: int, l: int, alpha: float, n_max: int):
    """sum_{n=0}^{n_max} (n-l)^s z^n with its geometric tail bound."""
    z = np.exp(-_LD(alpha))
    acc = _ZERO
    zn = _ONE
    for n in range(n_max + 1):
        x = _LD(n - l)
        p = _ONE
        for _ in range(s):
            p *= x
        acc += p * zn
        zn *= z
    rho = _ONE
    for _ in range(s):
        rho *= _LD(n_max + 2) / _LD(n_max + 1)
    rho *= z
    if rho < _ONE:
        bound = _ONE
        for _ in range(s):
            bound *= _LD(n_max + 1)
        tail = bound * zn / (_ONE - rho)
    else:
        tail = _LD(np.inf)
    return float(acc), float(tail)


def pq_oracle_sum(p: float, q: float, alpha: float, r: int, rtol: float,
                  atol: float, max_terms: int):
    """(1-z) * sum_{n>=r} z^n * prod_{l<r} [n-l]_{p,q} by direct summation.

    Basic numbers are generated with the exact three-term recurrence
    [n+1] = (p+q)[n] - pq[n-1], which is stable for p, q <= 1 and avoids
    the cancellation of (p^n - q^n)/(p - q) at p close to q.
    """
    p_ld = _LD(p)
    q_ld = _LD(q)
    z = np.exp(-_LD(alpha))
    gap = _ONE - z
    s_pq = p_ld + q_ld
    prod_pq = p_ld * q_ld

    window = [_ZERO] * r  # last r basic numbers, window[i] = [n - (r-1) + i]
    window[0] = _ONE
    b_prev = _ZERO  # [k-1]
    b_cur = _ONE    # [k]
    for i in range(1, r):
        b_prev, b_cur = b_cur, s_pq * b_cur - prod_pq * b_prev
        window[i] = b_cur

    acc = _ZERO
    zn = _ONE
    for _ in range(r):
        zn *= z
    n = r
    terms = 0
    while True:
        prod = _ONE
        for i in range(r):
            prod *= window[i]
        acc += prod * zn
        zn *= z
        rho = _ONE
        for _ in range(r):
            rho *= _LD(n + 2) / _LD(n + 1)
        rho *= z
        if rho < _ONE:
            bound = _ONE
            for _ in range(r):
                bound *= _LD(n + 1)
            tail = bound * zn / (_ONE - rho)
        else:
            tail = _LD(np.inf)
        n += 1
        terms += 1
        if gap * tail <= max(_LD(atol), _LD(rtol) * gap * acc) or terms >= max_terms:
            break
        b_prev, b_cur = b_cur, s_pq * b_cur - prod_pq * b_prev
        for i in range(r - 1):
            window[i] = window[i + 1]
        window[r - 1] = b_cur
    value = gap * acc
    err = gap * tail + _EPS_LD * (2 * r + 8) * abs(value) + _DBL_EPS * abs(value)
    return float(value), float(err), terms
