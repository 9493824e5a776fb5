# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Series-summation kernels, compiled backend.

Operation-for-operation mirror of ``_kernels_py``; see that module for
the derivations and error-bound conventions.  All accumulation uses the
C ``long double`` type so both backends round identically (the build
disables floating-point contraction for the same reason).
"""

cdef extern from "<math.h>" nogil:
    long double expl(long double)
    long double fabsl(long double)

cdef extern from "<float.h>":
    long double LDBL_EPSILON

DEF MAX_R = 64

BACKEND = "cython"
EPS = float(LDBL_EPSILON)

cdef long double _DBL_EPS = 2.220446049250313e-16


cdef int _fill_a_tilde(long double mu, int r, long double *coeffs) except -1:
    """Rescaled partial-fraction coefficients mu**(r-1) * A_l, l = 0..r-1."""
    cdef int order, l
    cdef long double acc, powm
    cdef long double nxt[MAX_R]
    coeffs[0] = -1.0
    for order in range(1, r):
        for l in range(order):
            nxt[l] = coeffs[l] * (mu + 1.0 / <long double> (order - l))
        acc = 0.0
        for l in range(order):
            acc += coeffs[l] / <long double> (order - l)
        powm = 1.0
        for l in range(order):
            powm *= mu
        nxt[order] = -powm - acc
        for l in range(order + 1):
            coeffs[l] = nxt[l]
    return 0


def a_coeff_values(int r, double mu):
    """Partial-fraction coefficients A_l(mu), l = 0..r-1, as floats."""
    cdef long double coeffs[MAX_R]
    cdef long double mu_ld = mu
    cdef long double scale = 1.0
    cdef int l
    _fill_a_tilde(mu_ld, r, coeffs)
    for l in range(r - 1):
        scale /= mu_ld
    return [float(coeffs[l] * scale) for l in range(r)]


def lerch_sum(double z, double a, double atol, long max_terms):
    """Direct summation of Phi(z, 1, a) with a geometric tail bound."""
    cdef long double z_ld = z
    cdef long double a_ld = a
    cdef long double atol_ld = atol
    cdef long double inv_gap = 1.0 / (1.0 - z_ld)
    cdef long double acc = 0.0
    cdef long double zn = 1.0
    cdef long double tail
    cdef long n = 0
    while True:
        acc += zn / (a_ld + n)
        zn *= z_ld
        tail = zn / (a_ld + n + 1) * inv_gap
        n += 1
        if tail <= atol_ld or n >= max_terms:
            break
    cdef long double err = tail + (LDBL_EPSILON * (n + 4) + _DBL_EPS) * fabsl(acc)
    return float(acc), float(err), n


def closed_moment_sum(double mu, double alpha, int r, double rtol,
                      double atol, long max_terms):
    """Normalised r-th moment via the rearranged partial-fraction route."""
    cdef long double mu_ld = mu
    cdef long double z = expl(-<long double> alpha)
    cdef long double inv_gap = 1.0 / (1.0 - z)
    cdef long double coeffs[MAX_R]
    cdef long double big_k = 0.0
    cdef long double scale = 1.0
    cdef long double acc = 0.0
    cdef long double abs_acc = 0.0
    cdef long double zm = 1.0
    cdef long double s_val, s_abs, t, tail, value, err, thresh
    cdef long m, terms
    cdef int l

    _fill_a_tilde(mu_ld, r, coeffs)
    for l in range(r):
        big_k += fabsl(coeffs[l])
    for l in range(2 * r - 2):
        scale /= mu_ld
    for l in range(r):
        zm *= z
    m = r
    terms = 0
    while True:
        s_val = 0.0
        s_abs = 0.0
        for l in range(r):
            t = coeffs[l] / ((1.0 + mu_ld * (m - l)) * (1.0 + mu_ld * (m - l - 1)))
            s_val += t
            s_abs += fabsl(t)
        acc += zm * s_val
        abs_acc += zm * s_abs
        zm *= z
        tail = big_k * zm / ((1.0 + mu_ld * (m + 2 - r)) * (1.0 + mu_ld * (m + 1 - r))) * inv_gap
        m += 1
        terms += 1
        thresh = <long double> rtol * fabsl(acc) * scale
        if thresh < <long double> atol:
            thresh = <long double> atol
        if tail * scale <= thresh or terms >= max_terms:
            break
    value = -acc * scale
    err = (tail + LDBL_EPSILON * (2 * r + 6) * abs_acc) * scale + _DBL_EPS * fabsl(value)
    return float(value), float(err), terms


def oracle_moment_sum(double mu, double alpha, int r, double rtol,
                      double atol, long max_terms):
    """Brute-force normalised moment (1-z) sum_n z^n prod_l phi(n-l)."""
    cdef long double mu_ld = mu
    cdef long double z = expl(-<long double> alpha)
    cdef long double gap = 1.0 - z
    cdef long double acc = 0.0
    cdef long double zn = 1.0
    cdef long double prod, x, rho, bound, tail, value, err, thresh
    cdef long n, terms
    cdef int l, i

    for l in range(r):
        zn *= z
    n = r
    terms = 0
    while True:
        prod = 1.0
        for l in range(r):
            x = <long double> (n - l)
            prod *= x / (1.0 + mu_ld * x)
        acc += prod * zn
        zn *= z
        rho = 1.0
        for i in range(r):
            rho *= <long double> (n + 2) / <long double> (n + 1)
        rho *= z
        if rho < 1.0:
            bound = 1.0
            for i in range(r):
                bound *= <long double> (n + 1)
            tail = bound * zn / (1.0 - rho)
        else:
            tail = 1.0 / 0.0
        n += 1
        terms += 1
        thresh = <long double> rtol * gap * acc
        if thresh < <long double> atol:
            thresh = <long double> atol
        if gap * tail <= thresh or terms >= max_terms:
            break
    value = gap * acc
    err = gap * tail + LDBL_EPSILON * (2 * r + 8) * value + _DBL_EPS * value
    return float(value), float(err), terms


def power_sum(int s, int l, double alpha, long n_max):
    """sum_{n=0}^{n_max} (n-l)^s z^n with its geometric tail bound."""
    cdef long double z = expl(-<long double> alpha)
    cdef long double acc = 0.0
    cdef long double zn = 1.0
    cdef long double x, p, rho, bound, tail
    cdef long n
    cdef int i
    for n in range(n_max + 1):
        x = <long double> (n - l)
        p = 1.0
        for i in range(s):
            p *= x
        acc += p * zn
        zn *= z
    rho = 1.0
    for i in range(s):
        rho *= <long double> (n_max + 2) / <long double> (n_max + 1)
    rho *= z
    if rho < 1.0:
        bound = 1.0
        for i in range(s):
            bound *= <long double> (n_max + 1)
        tail = bound * zn / (1.0 - rho)
    else:
        tail = 1.0 / 0.0
    return float(acc), float(tail)


def pq_oracle_sum(double p, double q, double alpha, int r, double rtol,
                  double atol, long max_terms):
    """(1-z) sum_{n>=r} z^n prod_{l<r} [n-l]_{p,q} by direct summation."""
    cdef long double p_ld = p
    cdef long double q_ld = q
    cdef long double z = expl(-<long double> alpha)
    cdef long double gap = 1.0 - z
    cdef long double s_pq = p_ld + q_ld
    cdef long double prod_pq = p_ld * q_ld
    cdef long double window[MAX_R]
    cdef long double b_prev = 0.0
    cdef long double b_cur = 1.0
    cdef long double b_next, acc, zn, prod, rho, bound, tail, value, err, thresh
    cdef long n, terms
    cdef int i

    window[0] = 1.0
    for i in range(1, r):
        b_next = s_pq * b_cur - prod_pq * b_prev
        b_prev = b_cur
        b_cur = b_next
        window[i] = b_cur

    acc = 0.0
    zn = 1.0
    for i in range(r):
        zn *= z
    n = r
    terms = 0
    while True:
        prod = 1.0
        for i in range(r):
            prod *= window[i]
        acc += prod * zn
        zn *= z
        rho = 1.0
        for i in range(r):
            rho *= <long double> (n + 2) / <long double> (n + 1)
        rho *= z
        if rho < 1.0:
            bound = 1.0
            for i in range(r):
                bound *= <long double> (n + 1)
            tail = bound * zn / (1.0 - rho)
        else:
            tail = 1.0 / 0.0
        n += 1
        terms += 1
        thresh = <long double> rtol * gap * acc
        if thresh < <long double> atol:
            thresh = <long double> atol
        if gap * tail <= thresh or terms >= max_terms:
            break
        b_next = s_pq * b_cur - prod_pq * b_prev
        b_prev = b_cur
        b_cur = b_next
        for i in range(r - 1):
            window[i] = window[i + 1]
        window[r - 1] = b_cur
    value = gap * acc
    err = gap * tail + LDBL_EPSILON * (2 * r + 8) * fabsl(value) + _DBL_EPS * fabsl(value)
    return float(value), float(err), terms
