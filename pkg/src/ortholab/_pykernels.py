"""Pure-Python implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable or when
``ORTHOLAB_PURE_PYTHON`` is set.  Every function here has a twin in
``_kernels.pyx`` with the same arithmetic in the same order, so the two
backends agree to rounding.  Arguments are assumed validated by the
public modules.
"""
from __future__ import annotations

import math

import numpy as np

from .quadrature import tanh_sinh

NAME = "python"

PI2_6 = math.pi * math.pi / 6.0


def _li2_series(x: float) -> float:
    # sum_{n>=1} x^n / n^2, used for |x| <= 1/2
    if x == 0.0:
        return 0.0
    total = x
    xn = x
    n = 1
    while True:
        n += 1
        xn *= x
        term = xn / (n * n)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total


def li2(x: float) -> float:
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x < -1.0:
        lx = math.log(-x)
        return -PI2_6 - 0.5 * lx * lx - li2(1.0 / x)
    if x < -0.5:
        lm = math.log1p(-x)
        return -_li2_series(x / (x - 1.0)) - 0.5 * lm * lm
    if x <= 0.5:
        return _li2_series(x)
    y = 1.0 - x
    return PI2_6 - math.log(x) * math.log1p(-x) - _li2_series(y)


def _rogers_small(u: float) -> float:
    # L(u) for 0 < u <= 1/2
    return _li2_series(u) + 0.5 * math.log(u) * math.log1p(-u)


def rogers_l(x: float) -> float:
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x > 0.0:
        if x <= 0.5:
            return _rogers_small(x)
        return PI2_6 - _rogers_small(1.0 - x)
    if x == -math.inf:
        return -PI2_6
    # Landen: L(x) = -L(x/(x-1)) maps every x < 0 into (0, 1)
    u = -x / (1.0 - x)
    if u <= 0.5:
        return -_rogers_small(u)
    return _rogers_small(1.0 / (1.0 - x)) - PI2_6


def rogers_l_array(xs) -> np.ndarray:
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    out = np.empty_like(xs)
    flat_in = xs.reshape(-1)
    flat_out = out.reshape(-1)
    for k in range(flat_in.shape[0]):
        flat_out[k] = rogers_l(float(flat_in[k]))
    return out


def rho_integral(l: float, t: float, tol: float, max_level: int):
    """Return ``(rho, error, converged)`` for one orthogeodesic density value."""
    if t < l:
        return 0.0, 0.0, True
    if t == l:
        return 4.0 * math.pi * l / math.sinh(l), 0.0, True
    sh = math.sinh(0.5 * l)
    a = -1.0 / (sh * sh)
    s = 1.0 / math.tanh(0.5 * l)
    sm1 = math.exp(-0.5 * l) / sh          # s - 1
    fx0 = sm1 * sm1
    x0 = -sm1
    ie = math.exp(-2.0 * t)
    dt = t - l
    eps = fx0 * math.exp(-2.0 * dt)
    delta = -fx0 * math.expm1(-2.0 * dt)    # fx0 - eps
    sigma = 4.0 * s + delta                 # fy0 - eps
    sqd = math.sqrt(delta * sigma)
    wl = 0.5 * (delta + sqd)                # x0 - e1
    wr = 2.0 * s * delta / (sqd + delta)    # e2 - x0
    e1 = x0 - wl
    e2 = eps / e1
    e1a = 2.0 * eps * s * s / (eps - a + sqd)   # e1 - a
    s2ie = s * s * ie
    s4ie = 4.0 * s * ie
    s2 = 2.0 * s * ie

    def h(x, xa, d1, d2):
        m = 1.0 - x
        fx = -x * xa / m
        q = d1 * d2 / m
        r = math.sqrt(q * (q + s4ie))
        z = 0.5 * (q + s2 + r)
        zm = s2ie / z
        tp = ie * z / ((m * ie + z) ** 2)
        tm = zm / ((m + zm) ** 2)
        return fx / r * (tp + tm)

    def left(x, dlo, dhi):
        return h(x, e1a + dlo, dlo, wr + dhi)

    def right(x, dlo, dhi):
        return h(x, x - a, wl + dlo, dhi)

    deep = max(40.0, 2.0 * t + abs(math.log(-a)) + 40.0)
    try:
        rl = tanh_sinh(left, e1, x0, tol=tol, depth_lo=deep, depth_hi=40.0,
                       max_level=max_level)
        rr = tanh_sinh(right, x0, e2, tol=tol, depth_lo=40.0, depth_hi=deep,
                       max_level=max_level)
    except ArithmeticError as exc:
        value = getattr(exc, "value", math.nan)
        return 8.0 * t * value, math.inf, False
    return 8.0 * t * (rl.value + rr.value), 8.0 * t * (rl.error + rr.error), True
