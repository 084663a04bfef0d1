"""Independent reference implementations used only by the tests.

None of these call into ortholab: they use mpmath, scipy and direct
geometric constructions, so agreement is evidence rather than tautology.
"""
from __future__ import annotations

import math
import warnings

import mpmath as mp
from scipy import integrate, optimize

mp.mp.dps = 40


def rogers_l_mp(x) -> float:
    x = mp.mpf(x)
    if x == 0:
        return 0.0
    if x == 1:
        return float(mp.zeta(2))
    return float(mp.polylog(2, x) + mp.log(abs(x)) * mp.log(1 - x) / 2)


def li2_mp(x) -> float:
    return float(mp.polylog(2, mp.mpf(x)))


def rho_literal(l: float, t: float) -> float:
    """rho(l, t) from the integral over x of the g+ / g- expression.

    The x-range ends at square-root branch points; the cosine substitution
    x = mid - half cos(theta) cancels them.
    """
    a = -1.0 / math.sinh(l / 2) ** 2
    s = math.sqrt(1 - a)
    fy0 = (1 + s) ** 2
    w0 = fy0 * math.exp(-2 * t)
    disc = (a + w0) ** 2 - 4 * w0
    e1 = ((a + w0) - math.sqrt(disc)) / 2
    e2 = ((a + w0) + math.sqrt(disc)) / 2
    E = math.exp(2 * t)

    def integrand(theta):
        x = 0.5 * (e1 + e2) - 0.5 * (e2 - e1) * math.cos(theta)
        dx = 0.5 * (e2 - e1) * math.sin(theta)
        f = x * (x - a) / (x - 1)
        W = f * E
        D = (a + W) ** 2 - 4 * W
        sq = math.sqrt(max(D, 0.0))
        gp = ((a + W) + sq) / 2
        gm = ((a + W) - sq) / 2
        dgp = (gp - 1) / sq
        dgm = (gm - 1) / -sq
        return (dgp / (x - gp) ** 2 - dgm / (x - gm) ** 2) * f * dx

    with warnings.catch_warnings():
        # quad reports roundoff once it is already at machine precision
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(integrand, 0, math.pi, epsabs=0, epsrel=1e-12, limit=400)
    return 8 * t * E * val


def brute_force_mass(l: float, t1: float, t2: float) -> float:
    """Liouville mass of chords with length in [t1, t2], by 2D quadrature.

    Integrates 4 L(x, y) / (x - y)**2 over {(x, y) in (a, 0) x (1, inf) :
    t1 <= L(x, y) <= t2}, locating the y-range for each x with brentq on
    the explicit length formula.  Equals the integral of rho over [t1, t2].
    """
    a = -1.0 / math.sinh(l / 2) ** 2
    s = math.sqrt(1 - a)
    y0 = 1 + s

    def f(z):
        return z * (z - a) / (z - 1)

    def length(x, y):
        return 0.5 * math.log(f(y) / f(x))

    def y_roots(x, t):
        # f(y) = f(x) e^{2t} on each side of the minimum y0
        target = f(x) * math.exp(2 * t)
        if target <= f(y0):
            return None
        g = lambda y: f(y) - target
        eps = 0.5 * (y0 - 1)
        while g(1 + eps) <= 0:  # f blows up at the pole y = 1
            eps *= 0.5
        lo = optimize.brentq(g, 1 + eps, y0, xtol=1e-15, rtol=1e-15)
        hi_b = y0 * 2
        while g(hi_b) < 0:
            hi_b *= 2
        hi = optimize.brentq(g, y0, hi_b, xtol=1e-15, rtol=1e-15)
        return lo, hi

    def inner(x):
        r2 = y_roots(x, t2)
        if r2 is None:
            return 0.0
        r1 = y_roots(x, t1)
        w = lambda y: 4 * length(x, y) / (x - y) ** 2
        if r1 is None:
            return integrate.quad(w, r2[0], r2[1], epsabs=0, epsrel=1e-12, limit=200)[0]
        left = integrate.quad(w, r2[0], r1[0], epsabs=0, epsrel=1e-12, limit=200)[0]
        right = integrate.quad(w, r1[1], r2[1], epsabs=0, epsrel=1e-12, limit=200)[0]
        return left + right

    # x-range where f(x) >= f(y0) e^{-2 t2}: between the two roots in (a, 0)
    fy0 = f(y0)
    x0 = 1 - s
    thr = fy0 * math.exp(-2 * t2)
    xl = optimize.brentq(lambda x: f(x) - thr, a, x0, xtol=1e-16, rtol=1e-15)
    xr = optimize.brentq(lambda x: f(x) - thr, x0, 0.0, xtol=1e-16, rtol=1e-15)
    pts = []
    thr1 = fy0 * math.exp(-2 * t1)
    if thr1 < f(x0):
        pts = [optimize.brentq(lambda x: f(x) - thr1, xl, x0, xtol=1e-16, rtol=1e-15),
               optimize.brentq(lambda x: f(x) - thr1, x0, xr, xtol=1e-16, rtol=1e-15)]
    edges = [xl] + pts + [xr]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        # cosine map removes the square-root edges of the x-range
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        total += integrate.quad(lambda th: inner(mid - half * math.cos(th)) * half * math.sin(th),
                                0, math.pi, epsabs=0, epsrel=1e-10, limit=200)[0]
    return total


def inner_integral_numeric(y: float, a: float) -> float:
    """Integral over (a, 0) of log(f(y)/f(x)) / (x - y)**2, by scipy with log weights split off."""
    fy = y * (y - a) / (y - 1)

    def g(x):
        return math.log(fy * (x - 1) / (x * (x - a))) / (x - y) ** 2

    mid = 0.5 * a
    left = integrate.quad(g, a, mid, epsabs=0, epsrel=1e-13, limit=400)[0]
    right = integrate.quad(g, mid, 0, epsabs=0, epsrel=1e-13, limit=400)[0]
    return left + right


def _crossing(x: float, y: float, side: tuple[float, float]) -> complex:
    """Point where the geodesic (x, y) meets the geodesic ``side`` (Euclidean construction)."""
    c, r = 0.5 * (x + y), 0.5 * abs(y - x)
    p, q = side
    if math.isinf(p) or math.isinf(q):
        v = q if math.isinf(p) else p
        cos_phi = (v - c) / r
    else:
        c2, r2 = 0.5 * (p + q), 0.5 * abs(q - p)
        cos_phi = (r2 * r2 - r * r - (c - c2) ** 2) / (2 * r * (c - c2))
    if not -1 < cos_phi < 1:
        raise ValueError("geodesics do not cross")
    return complex(c + r * cos_phi, r * math.sqrt(1 - cos_phi * cos_phi))


def arc_between_sides(x: float, y: float, side1, side2) -> float:
    """Hyperbolic distance between the crossings of geodesic (x, y) with two sides.

    Uses cosh d = 1 + |z - w|**2 / (2 Im z Im w) in the upper half-plane.
    """
    z, w = _crossing(x, y, side1), _crossing(x, y, side2)
    return math.acosh(1 + abs(z - w) ** 2 / (2 * z.imag * w.imag))
