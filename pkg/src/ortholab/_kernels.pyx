# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: dilogarithm evaluation and the density integral.

Mirrors ``_pykernels`` operation for operation.  The density kernel runs
without the GIL so grid evaluations can be spread over threads.
"""
from libc.math cimport (M_PI, asinh, ceil, cosh, exp, expm1, fabs, isinf,
                        log, log1p, sinh, sqrt, tanh, INFINITY, NAN)

import numpy as np

NAME = "compiled"

cdef double PI2_6 = M_PI * M_PI / 6.0
cdef double HALF_PI = 0.5 * M_PI


cdef inline double _li2_series(double x) noexcept nogil:
    cdef double total, xn, term
    cdef long n
    if x == 0.0:
        return 0.0
    total = x
    xn = x
    n = 1
    while True:
        n += 1
        xn *= x
        term = xn / <double>(n * n)
        total += term
        if fabs(term) <= 1e-17 * fabs(total):
            return total


cdef double _li2(double x) noexcept nogil:
    cdef double lx, lm, y
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x < -1.0:
        lx = log(-x)
        return -PI2_6 - 0.5 * lx * lx - _li2(1.0 / x)
    if x < -0.5:
        lm = log1p(-x)
        return -_li2_series(x / (x - 1.0)) - 0.5 * lm * lm
    if x <= 0.5:
        return _li2_series(x)
    y = 1.0 - x
    return PI2_6 - log(x) * log1p(-x) - _li2_series(y)


cdef inline double _rogers_small(double u) noexcept nogil:
    return _li2_series(u) + 0.5 * log(u) * log1p(-u)


cdef double _rogers(double x) noexcept nogil:
    cdef double u
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x > 0.0:
        if x <= 0.5:
            return _rogers_small(x)
        return PI2_6 - _rogers_small(1.0 - x)
    if isinf(x):
        return -PI2_6
    u = -x / (1.0 - x)
    if u <= 0.5:
        return -_rogers_small(u)
    return _rogers_small(1.0 / (1.0 - x)) - PI2_6


def li2(double x):
    return _li2(x)


def rogers_l(double x):
    return _rogers(x)


def rogers_l_array(xs):
    arr = np.ascontiguousarray(xs, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] src = arr.reshape(-1)
    cdef double[::1] dst = out.reshape(-1)
    cdef Py_ssize_t k, n = src.shape[0]
    with nogil:
        for k in range(n):
            dst[k] = _rogers(src[k])
    return out


# ---------------------------------------------------------------------------
# density integrand and its double-exponential quadrature

cdef struct RhoParams:
    double a
    double s
    double ie
    double s2ie
    double s4ie
    double s2
    double e1a
    double wl
    double wr
    int side           # 0: left half [e1, x0], 1: right half [x0, e2]


cdef inline double _rho_h(RhoParams* p, double x, double dlo, double dhi) noexcept nogil:
    cdef double xa, d1, d2, m, fx, q, r, z, zm, tp, tm
    if p.side == 0:
        xa = p.e1a + dlo
        d1 = dlo
        d2 = p.wr + dhi
    else:
        xa = x - p.a
        d1 = p.wl + dlo
        d2 = dhi
    m = 1.0 - x
    fx = -x * xa / m
    q = d1 * d2 / m
    r = sqrt(q * (q + p.s4ie))
    z = 0.5 * (q + p.s2 + r)
    zm = p.s2ie / z
    tp = p.ie * z / ((m * p.ie + z) * (m * p.ie + z))
    tm = zm / ((m + zm) * (m + zm))
    return fx / r * (tp + tm)


cdef inline double _ts_term(RhoParams* p, double lo, double hi, double c,
                            double tau, long* n_evals) noexcept nogil:
    cdef double u, e, near, far, dlo, dhi, w, x
    u = HALF_PI * sinh(tau)
    e = exp(-2.0 * fabs(u))
    near = 2.0 * c * e / (1.0 + e)
    far = 2.0 * c / (1.0 + e)
    if u >= 0.0:
        dlo = far
        dhi = near
    else:
        dlo = near
        dhi = far
    w = c * HALF_PI * cosh(tau) * 4.0 * e / ((1.0 + e) * (1.0 + e))
    if dlo <= 0.0 or dhi <= 0.0 or w == 0.0:
        return 0.0
    if dlo <= dhi:
        x = lo + dlo
    else:
        x = hi - dhi
    n_evals[0] += 1
    return _rho_h(p, x, dlo, dhi) * w


cdef int _tanh_sinh(RhoParams* p, double lo, double hi, double tol,
                    double depth_lo, double depth_hi, int max_level,
                    double* value, double* error, long* n_evals) noexcept nogil:
    cdef double c, tmin, tmax, h, total, estimate, new
    cdef long k
    cdef int level
    if not hi > lo:
        value[0] = 0.0
        error[0] = 0.0
        return 1
    c = 0.5 * (hi - lo)
    tmin = -asinh(depth_lo / M_PI)
    tmax = asinh(depth_hi / M_PI)
    h = 0.5
    total = 0.0
    k = <long>ceil(tmin / h)
    while k * h <= tmax:
        total += _ts_term(p, lo, hi, c, k * h, n_evals)
        k += 1
    estimate = h * total
    error[0] = INFINITY
    for level in range(1, max_level + 1):
        h *= 0.5
        k = <long>ceil(tmin / h)
        if k % 2 == 0:
            k += 1
        while k * h <= tmax:
            total += _ts_term(p, lo, hi, c, k * h, n_evals)
            k += 2
        new = h * total
        error[0] = fabs(new - estimate)
        estimate = new
        value[0] = new
        if level >= 2 and error[0] <= tol * fabs(new):
            return 1
        if level >= 2 and new == 0.0 and error[0] == 0.0:
            return 1
    value[0] = estimate
    return 0


cdef int _rho(double l, double t, double tol, int max_level,
              double* value, double* error) noexcept nogil:
    cdef RhoParams p
    cdef double sh, a, s, sm1, fx0, x0, dt, eps, delta, sigma, sqd
    cdef double e1, e2, deep, vl, vr, el, er
    cdef long n_evals = 0
    cdef int ok_l, ok_r
    if t < l:
        value[0] = 0.0
        error[0] = 0.0
        return 1
    if t == l:
        value[0] = 4.0 * M_PI * l / sinh(l)
        error[0] = 0.0
        return 1
    sh = sinh(0.5 * l)
    a = -1.0 / (sh * sh)
    s = 1.0 / tanh(0.5 * l)
    sm1 = exp(-0.5 * l) / sh
    fx0 = sm1 * sm1
    x0 = -sm1
    p.ie = exp(-2.0 * t)
    dt = t - l
    eps = fx0 * exp(-2.0 * dt)
    delta = -fx0 * expm1(-2.0 * dt)
    sigma = 4.0 * s + delta
    sqd = sqrt(delta * sigma)
    p.wl = 0.5 * (delta + sqd)
    p.wr = 2.0 * s * delta / (sqd + delta)
    e1 = x0 - p.wl
    e2 = eps / e1
    p.e1a = 2.0 * eps * s * s / (eps - a + sqd)
    p.a = a
    p.s = s
    p.s2ie = s * s * p.ie
    p.s4ie = 4.0 * s * p.ie
    p.s2 = 2.0 * s * p.ie
    deep = 2.0 * t + fabs(log(-a)) + 40.0
    if deep < 40.0:
        deep = 40.0
    p.side = 0
    ok_l = _tanh_sinh(&p, e1, x0, tol, deep, 40.0, max_level, &vl, &el, &n_evals)
    p.side = 1
    ok_r = _tanh_sinh(&p, x0, e2, tol, 40.0, deep, max_level, &vr, &er, &n_evals)
    value[0] = 8.0 * t * (vl + vr)
    if ok_l and ok_r:
        error[0] = 8.0 * t * (el + er)
        return 1
    error[0] = INFINITY
    return 0


def rho_integral(double l, double t, double tol, int max_level):
    """Return ``(rho, error, converged)`` for one orthogeodesic density value."""
    cdef double value = NAN, error = INFINITY
    cdef int ok
    with nogil:
        ok = _rho(l, t, tol, max_level, &value, &error)
    return value, error, bool(ok)
