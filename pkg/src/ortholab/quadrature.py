"""Numerical integration engines.

Two rules live here:

``tanh_sinh``
    Double-exponential substitution for integrands with algebraic or
    logarithmic endpoint singularities.  The integrand receives the node
    together with its distances to both endpoints, computed without
    cancellation, so singular factors such as ``1/sqrt(x - lo)`` or
    ``log(hi - x)`` can be evaluated to full relative precision even when
    the node sits 1e-300 away from the endpoint.

``gauss_kronrod``
    Globally adaptive 7/15-point Gauss-Kronrod subdivision for piecewise
    smooth integrands on finite or half-infinite intervals.
"""
from __future__ import annotations

import heapq
import math
from typing import Callable, NamedTuple, Sequence

from .errors import QuadratureError

_HALF_PI = 0.5 * math.pi
_EPS = 2.220446049250313e-16


class QuadResult(NamedTuple):
    value: float
    error: float
    n_evals: int


def tanh_sinh_node(tau: float, half_width: float) -> tuple[float, float, float]:
    """Map an abscissa of the trapezoid grid to ``(dlo, dhi, weight)``.

    ``dlo`` and ``dhi`` are the distances from the node to the lower and
    upper endpoint of an interval of half-width ``half_width``; ``weight``
    is ``dx/dtau``.
    """
    u = _HALF_PI * math.sinh(tau)
    e = math.exp(-2.0 * abs(u))
    near = 2.0 * half_width * e / (1.0 + e)
    far = 2.0 * half_width / (1.0 + e)
    if u >= 0.0:
        dlo, dhi = far, near
    else:
        dlo, dhi = near, far
    weight = half_width * _HALF_PI * math.cosh(tau) * 4.0 * e / (1.0 + e) ** 2
    return dlo, dhi, weight


def tanh_sinh(
    f: Callable[[float, float, float], float],
    lo: float,
    hi: float,
    *,
    tol: float = 1e-10,
    depth_lo: float = 40.0,
    depth_hi: float = 40.0,
    h0: float = 0.5,
    min_level: int = 2,
    max_level: int = 9,
) -> QuadResult:
    """Integrate ``f(x, x - lo, hi - x)`` over ``[lo, hi]``.

    Parameters
    ----------
    f : callable
        Integrand taking the node and its two endpoint distances.
    lo, hi : float
        Finite limits with ``lo < hi``.
    tol : float
        Relative tolerance on successive halvings of the grid step.
    depth_lo, depth_hi : float
        The grid is truncated where the relative distance to the endpoint
        falls below ``exp(-depth)``.  Raise the depth at an endpoint where
        the integrand has structure on exponentially small scales.
    h0 : float
        Initial step in the auxiliary variable.
    min_level, max_level : int
        Bounds on the number of step halvings.

    Returns
    -------
    QuadResult
        The error is the difference between the last two levels, which
        overstates the true error of a converged double-exponential rule.

    Raises
    ------
    QuadratureError
        If ``max_level`` halvings do not reach ``tol``.
    """
    if not hi > lo:
        if hi == lo:
            return QuadResult(0.0, 0.0, 0)
        raise ValueError("tanh_sinh requires lo < hi")
    c = 0.5 * (hi - lo)
    tmin = -math.asinh(depth_lo / math.pi)
    tmax = math.asinh(depth_hi / math.pi)
    n_evals = 0

    def term(tau: float) -> float:
        nonlocal n_evals
        dlo, dhi, w = tanh_sinh_node(tau, c)
        if dlo <= 0.0 or dhi <= 0.0 or w == 0.0:
            return 0.0
        x = lo + dlo if dlo <= dhi else hi - dhi
        n_evals += 1
        return f(x, dlo, dhi) * w

    h = h0
    total = 0.0
    k = math.ceil(tmin / h)
    while k * h <= tmax:
        total += term(k * h)
        k += 1
    estimate = h * total
    error = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        k = math.ceil(tmin / h)
        if k % 2 == 0:
            k += 1
        while k * h <= tmax:
            total += term(k * h)
            k += 2
        new = h * total
        error = abs(new - estimate)
        estimate = new
        if level >= min_level and error <= tol * abs(new):
            return QuadResult(new, error, n_evals)
        if level >= min_level and new == 0.0 and error == 0.0:
            return QuadResult(0.0, 0.0, n_evals)
    raise QuadratureError("tanh-sinh did not converge", estimate, error)


# QUADPACK qk15 abscissae and weights.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _kronrod15(f, a: float, b: float) -> tuple[float, float]:
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(res_k)
    fv1 = [0.0] * 7
    fv2 = [0.0] * 7
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(center - dx)
        f2 = f(center + dx)
        fv1[j] = f1
        fv2[j] = f2
        res_k += _WGK[j] * (f1 + f2)
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * (f1 + f2)
    mean = 0.5 * res_k
    res_asc = _WGK[7] * abs(fc - mean)
    for j in range(7):
        res_asc += _WGK[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean))
    value = res_k * half
    res_abs *= abs(half)
    res_asc *= abs(half)
    err = abs((res_k - res_g) * half)
    if res_asc != 0.0 and err != 0.0:
        err = res_asc * min(1.0, (200.0 * err / res_asc) ** 1.5)
    if res_abs > 1e-290:
        err = max(err, 50.0 * _EPS * res_abs)
    return value, err


def gauss_kronrod(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    abs_tol: float = 1e-13,
    rel_tol: float = 1e-10,
    points: Sequence[float] = (),
    max_intervals: int = 4000,
) -> QuadResult:
    """Adaptive G7/K15 integration of ``f`` over ``[lo, hi]``.

    ``hi`` may be ``math.inf``; the tail is then folded onto ``[0, 1)`` by
    ``x = lo + u / (1 - u)``.  ``points`` are interior breakpoints where the
    integrand is known to be non-smooth.
    """
    if hi < lo:
        r = gauss_kronrod(f, hi, lo, abs_tol=abs_tol, rel_tol=rel_tol,
                          points=points, max_intervals=max_intervals)
        return QuadResult(-r.value, r.error, r.n_evals)
    if hi == lo:
        return QuadResult(0.0, 0.0, 0)
    if math.isinf(hi):
        def g(u):
            v = 1.0 - u
            return f(lo + u / v) / (v * v)

        mapped = [p - lo for p in points if lo < p]
        mapped = [m / (1.0 + m) for m in mapped]
        return gauss_kronrod(g, 0.0, 1.0, abs_tol=abs_tol, rel_tol=rel_tol,
                             points=mapped, max_intervals=max_intervals)

    edges = [lo] + sorted(p for p in points if lo < p < hi) + [hi]
    heap = []
    total = 0.0
    total_err = 0.0
    n_evals = 0
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = _kronrod15(f, a, b)
        n_evals += 15
        total += v
        total_err += e
        heapq.heappush(heap, (-e, a, b, v))
    while total_err > max(abs_tol, rel_tol * abs(total)):
        if len(heap) >= max_intervals:
            raise QuadratureError("adaptive Gauss-Kronrod hit the interval limit",
                                  total, total_err)
        neg_e, a, b, v = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not a < m < b:
            raise QuadratureError("adaptive Gauss-Kronrod cannot bisect further",
                                  total, total_err)
        v1, e1 = _kronrod15(f, a, m)
        v2, e2 = _kronrod15(f, m, b)
        n_evals += 30
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_e
        heapq.heappush(heap, (-e1, a, m, v1))
        heapq.heappush(heap, (-e2, m, b, v2))
    # re-sum to shed the drift of incremental updates
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    return QuadResult(total, total_err, n_evals)
