"""Length densities of the intersection measure and their total masses.

For an ideal polygon the push-forward of Liouville measure under the
intersection-length map has density::

    4 N t**2 / sinh(t)**2  +  sum over orthogeodesics of rho(l_i, t)

The cusp term is explicit.  ``rho(l, t)`` is an integral over the
level set ``{L(x, y) = t}`` of the normalized quadrilateral with side
distance ``l``; it vanishes for ``t < l`` and has total mass
``8 L(1/cosh(l/2)**2)``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .config import DEFAULTS
from .dilog import rogers_l, rogers_l_infinity
from .errors import ConsistencyError, DomainError, QuadratureError
from .hypgeom import a_from_length, b_from_length
from .polygon import IdealPolygon, orthospectrum
from .quadrature import QuadResult, gauss_kronrod, tanh_sinh

PI2 = math.pi * math.pi

__all__ = [
    "DensityProfile",
    "MassResult",
    "cusp_density",
    "cusp_total_mass",
    "rho",
    "rho_grid",
    "rho_mass",
    "total_mass_F",
    "big_g",
    "big_g_quadrature",
    "inner_integral_I",
    "j_combination",
    "j_limits",
    "asymptotic_r",
    "asymptotic_ratio",
    "asymptotic_ratio_limit",
    "volume_C",
    "predicted_density",
    "predicted_total_mass",
    "profile",
]

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

# Step halvings allowed in the density quadrature; 11 levels means h = 2**-12.
RHO_MAX_LEVEL = 11


def _length(l: float) -> float:
    l = float(l)
    if not l > 0.0 or math.isinf(l):
        raise DomainError(f"length must be positive and finite, got {l!r}")
    return l


def cusp_density(n_cusps: int, t: float) -> float:
    """``4 N t**2 / sinh(t)**2``, with the limit ``4 N`` at ``t = 0``."""
    if n_cusps < 0:
        raise DomainError(f"cusp count must be non-negative, got {n_cusps!r}")
    t = float(t)
    if t < 0.0 or math.isnan(t):
        raise DomainError(f"t must be non-negative, got {t!r}")
    if t == 0.0:
        return 4.0 * n_cusps
    if math.isinf(t):
        return 0.0
    # t^2/sinh^2 t = 4 t^2 e^{-2t} / (1 - e^{-2t})^2, finite for every t > 0
    em = -math.expm1(-2.0 * t)
    return 16.0 * n_cusps * t * t * math.exp(-2.0 * t) / (em * em)


def cusp_total_mass(n_cusps: int) -> float:
    """Integral of :func:`cusp_density` over ``t > 0``, equal to ``2 N pi**2 / 3``."""
    return 2.0 * n_cusps * PI2 / 3.0


def rho(l: float, t: float, *, tol: float | None = None) -> float:
    """Density of orthogeodesic length ``l`` at intersection length ``t``.

    Zero for ``t < l``; at ``t = l`` the level set shrinks to the critical
    pair and the value is the limit ``4 pi l / sinh(l)``.

    Raises
    ------
    QuadratureError
        If the double-exponential rule misses ``tol`` (relative).  The
        exception carries the last estimate and its error.
    """
    l = _length(l)
    t = float(t)
    if math.isnan(t):
        raise DomainError("t is NaN")
    if t < l:
        return 0.0
    if math.isinf(t):
        return 0.0
    tol = DEFAULTS.quadrature_tol if tol is None else tol
    value, error, ok = kernels.rho_integral(l, t, tol, RHO_MAX_LEVEL)
    if not ok:
        raise QuadratureError(f"rho({l!r}, {t!r}) did not converge", value, error)
    return value


def rho_grid(l: float, ts: Iterable[float], *, tol: float | None = None,
             workers: int | None = None) -> np.ndarray:
    """:func:`rho` on many ``t``; the compiled kernel runs threads in parallel."""
    ts = [float(t) for t in ts]
    if workers == 1 or len(ts) < 8:
        return np.array([rho(l, t, tol=tol) for t in ts], dtype=float)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.fromiter(pool.map(lambda t: rho(l, t, tol=tol), ts), dtype=float, count=len(ts))


@dataclass(frozen=True)
class MassResult:
    """Integral of ``rho(l, .)`` over ``[l, upper]`` plus the tail beyond."""

    value: float
    error: float
    upper: float
    tail: float


def _tail_envelope(l: float, upper: float) -> float:
    # integral over [T, inf) of C 16 t^2 e^{-2t}, C bounding the large-t ratio
    c = 2.0 * max(1.0, 2.0 * math.cosh(l), asymptotic_r(l))
    return c * (8.0 * upper * upper + 8.0 * upper + 4.0) * math.exp(-2.0 * upper)


def mass_cutoff(l: float, level: float = 1e-12) -> float:
    """Smallest ``T > l`` (on a 0.25 grid) where the envelope density falls below ``level``."""
    c = 2.0 * max(1.0, 2.0 * math.cosh(l), asymptotic_r(l))
    t = max(l + 1.0, 1.0)
    while c * 16.0 * t * t * math.exp(-2.0 * t) >= level:
        t += 0.25
    return t


def rho_mass(l: float, upper: float | None = None, *, tol: float | None = None,
             rel_tol: float = 1e-10) -> MassResult:
    """``integral of rho(l, t) dt`` by adaptive Gauss-Kronrod over ``[l, upper]``.

    ``upper`` defaults to :func:`mass_cutoff`.  The analytic tail bound
    from the large-``t`` envelope is reported and added to ``value``.
    """
    l = _length(l)
    quad_tol = min(DEFAULTS.quadrature_tol if tol is None else tol, 1e-9)
    if upper is None:
        upper = mass_cutoff(l)
    if upper <= l:
        return MassResult(0.0, 0.0, float(upper), 0.0)
    r = gauss_kronrod(lambda t: rho(l, t, tol=quad_tol), l, upper,
                      abs_tol=1e-13, rel_tol=rel_tol)
    tail = _tail_envelope(l, upper)
    return MassResult(r.value + tail, r.error + tail, float(upper), tail)


def total_mass_F(l: float, *, tol: float = 1e-11) -> float:
    """``8 L(1/cosh(l/2)**2)``, checked against ``-8 L(-1/sinh(l/2)**2)``."""
    l = _length(l)
    cosh_form = 8.0 * rogers_l(b_from_length(l))
    sinh_form = -8.0 * rogers_l(a_from_length(l))
    if abs(cosh_form - sinh_form) > tol:
        raise ConsistencyError(f"chart masses disagree: {cosh_form!r} vs {sinh_form!r}")
    return cosh_form


def _negative_a(a: float) -> float:
    a = float(a)
    if not a < 0.0 or math.isinf(a):
        raise DomainError(f"a must be finite and negative, got {a!r}")
    return a


def big_g(a: float) -> float:
    """``G(a) = -4 L(a)``."""
    return -4.0 * rogers_l(_negative_a(a))


def big_g_quadrature(a: float, *, tol: float = 1e-10) -> float:
    """``G(a)`` as the double integral of ``log(f(y)/f(x)) / (x - y)**2``.

    ``x`` runs over ``(a, 0)`` and ``y`` over ``(1, inf)``; the outer range is
    folded onto ``(0, 1)`` by ``y = 1 + u/(1 - u)``.  Both directions use
    double-exponential nodes, and every logarithm is formed from endpoint
    distances so the integrable singularities keep full precision.
    """
    a = _negative_a(a)
    one_minus_a = 1.0 - a

    def inner(u, du_lo, du_hi):
        ym1 = du_lo / du_hi
        y = 1.0 + ym1
        log_fy = math.log1p(ym1) + math.log(one_minus_a + ym1) - (math.log(du_lo) - math.log(du_hi))

        def integrand(x, dx_lo, dx_hi):
            # dx_lo = x - a, dx_hi = -x
            log_fx = math.log(dx_hi) + math.log(dx_lo) - math.log1p(dx_hi)
            gap = y - x
            return (log_fy - log_fx) / (gap * gap)

        r = tanh_sinh(integrand, a, 0.0, tol=tol)
        return r.value / (du_hi * du_hi)

    return tanh_sinh(inner, 0.0, 1.0, tol=tol).value


def inner_integral_I(y: float, a: float) -> float:
    """``integral over (a, 0) of log(f(y)/f(x)) / (x - y)**2 dx`` in closed form."""
    a = _negative_a(a)
    y = float(y)
    if not y > 1.0:
        raise DomainError(f"y must exceed 1, got {y!r}")
    ly, ly1, lya = math.log(y), math.log(y - 1.0), math.log(y - a)
    lma, l1a = math.log(-a), math.log1p(-a)
    first = ly / (y - 1.0) - ly1 / y
    second = 2.0 * ((lya - lma) / y - (ly - lma) / (y - a))
    third = (ly1 - l1a) / (y - a) - (lya - l1a) / (y - 1.0)
    return first + second + third


def j_combination(y: float, a: float) -> float:
    """Antiderivative of :func:`inner_integral_I` in ``y``.

    ``-2 L(1 - y) - 4 L(y/a) + 2 L((1 - y)/(1 - a))``.
    """
    a = _negative_a(a)
    y = float(y)
    if not y > 1.0:
        raise DomainError(f"y must exceed 1, got {y!r}")
    return (-2.0 * rogers_l(1.0 - y) - 4.0 * rogers_l(y / a)
            + 2.0 * rogers_l((1.0 - y) / (1.0 - a)))


def j_limits(a: float) -> tuple[float, float]:
    """Limits of :func:`j_combination` as ``y -> 1+`` and ``y -> inf``."""
    a = _negative_a(a)
    return -4.0 * rogers_l(1.0 / a), -4.0 * rogers_l_infinity()


def asymptotic_r(l: float) -> float:
    """``(-2 a**2 + 5 a - 2) / (a (1 - a))`` with ``a = -1/sinh(l/2)**2``.

    The closed-form constant the acceptance check holds the ratio
    ``rho(l, t) / (16 t**2 e**(-2t))`` to.  Numerically the ratio tends to
    :func:`asymptotic_ratio_limit` instead.
    """
    a = a_from_length(l)
    return (-2.0 * a * a + 5.0 * a - 2.0) / (a * (1.0 - a))


def asymptotic_ratio_limit(l: float) -> float:
    """Large-``t`` limit ``2 cosh(l)`` of ``rho(l, t) / (16 t**2 e**(-2t))``.

    Follows from the expansion ``g-(w) = 1 + (1 - a)/w + O(w**-2)``; the
    ratio approaches it at rate ``O(1/t)``.
    """
    return 2.0 * math.cosh(_length(l))


def asymptotic_ratio(l: float, t: float, *, tol: float | None = None) -> float:
    """``rho(l, t) / (16 t**2 e**(-2t))``."""
    t = float(t)
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t!r}")
    return rho(l, t, tol=tol) * math.exp(2.0 * t) / (16.0 * t * t)


def volume_C(t_param: float) -> float:
    """Liouville volume ``8 |L(t)|`` of the region cut out by two geodesics."""
    t_param = float(t_param)
    if t_param == 0.0 or not t_param <= 1.0:
        raise DomainError(f"parameter must satisfy t <= 1 and t != 0, got {t_param!r}")
    return 8.0 * abs(rogers_l(t_param))


def predicted_density(polygon: IdealPolygon, t: float, *, tol: float | None = None) -> float:
    """Cusp term plus one ``rho`` per orthogeodesic at intersection length ``t``."""
    lengths = orthospectrum(polygon).lengths()
    return cusp_density(polygon.n, t) + math.fsum(rho(l, t, tol=tol) for l in lengths)


def predicted_total_mass(polygon: IdealPolygon, *, quadrature: bool = False) -> float:
    """Total mass of the predicted density; ``2 pi**2 (n - 2)`` for an ideal n-gon.

    With ``quadrature=True`` every orthogeodesic mass is integrated
    numerically instead of taken from the closed form.
    """
    lengths = orthospectrum(polygon).lengths()
    if quadrature:
        masses = [rho_mass(l).value for l in lengths]
        cusp = gauss_kronrod(lambda t: cusp_density(polygon.n, t), 0.0, math.inf,
                             abs_tol=1e-12, rel_tol=1e-12).value
    else:
        masses = [total_mass_F(l) for l in lengths]
        cusp = cusp_total_mass(polygon.n)
    return math.fsum(masses) + cusp


@dataclass(frozen=True)
class DensityProfile:
    """Sampled density on a ``t`` grid.

    ``l`` is ``None`` for a pure cusp profile with ``n_cusps`` cusps.
    """

    l: float | None
    t_grid: np.ndarray
    values: np.ndarray
    quadrature_tol: float
    n_cusps: int = 0

    def trapezoid_mass(self) -> float:
        return float(_trapezoid(self.values, self.t_grid))

    def rows(self) -> list[tuple[float, float, float]]:
        label = math.nan if self.l is None else self.l
        return [(label, float(t), float(v)) for t, v in zip(self.t_grid, self.values)]


def profile(l: float | None, t_grid: Sequence[float], *, n_cusps: int = 0,
            tol: float | None = None, workers: int | None = None) -> DensityProfile:
    """Evaluate ``rho(l, .)`` or the cusp density on ``t_grid``."""
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or (ts.size > 1 and not np.all(np.diff(ts) > 0.0)):
        raise DomainError("t grid must be one-dimensional and strictly increasing")
    tol = DEFAULTS.quadrature_tol if tol is None else tol
    if l is None:
        values = np.array([cusp_density(n_cusps, t) for t in ts])
    else:
        values = rho_grid(l, ts, tol=tol, workers=workers)
    return DensityProfile(l, ts, values, tol, n_cusps)
