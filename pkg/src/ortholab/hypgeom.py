"""Normalized ideal quadrilaterals and triangles in the upper half-plane.

A pair of disjoint geodesics at distance ``l`` is normalized to the sides
``(a, 0)`` and ``(1, inf)`` of an ideal quadrilateral.  Three equivalent
charts describe it::

    a = -1 / sinh(l/2)**2        b = 1 / cosh(l/2)**2        b = -a / (1 - a)

A geodesic with endpoints ``x`` in ``(a, 0)`` and ``y`` in ``(1, inf)``
crosses the quadrilateral in an arc of length ``1/2 log(f(y) / f(x))``
with ``f(x) = x (x - a) / (x - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import BranchGapError, DegenerateConfigurationError, DomainError, PoleError

INF = math.inf

__all__ = [
    "QuadChart",
    "CriticalPair",
    "a_from_length",
    "b_from_length",
    "length_from_a",
    "length_from_b",
    "a_from_b",
    "b_from_a",
    "cross_ratio",
    "mobius",
    "f_rational",
    "critical_points",
    "g_inverse",
    "intersection_length",
    "triangle_length_l1",
    "triangle_length_l2",
]


def _positive_length(l: float) -> float:
    l = float(l)
    if not l > 0.0 or math.isinf(l):
        raise DomainError(f"length must be positive and finite, got {l!r}")
    return l


def a_from_length(l: float) -> float:
    """Sinh chart ``a = -1/sinh(l/2)**2``, increasing toward 0 as l grows."""
    sh = math.sinh(0.5 * _positive_length(l))
    return -1.0 / (sh * sh)


def b_from_length(l: float) -> float:
    """Cosh chart ``b = 1/cosh(l/2)**2`` in ``(0, 1)``."""
    ch = math.cosh(0.5 * _positive_length(l))
    return 1.0 / (ch * ch)


def length_from_a(a: float) -> float:
    """Inverse of :func:`a_from_length`, defined for ``a < 0``."""
    a = float(a)
    if not a < 0.0 or math.isinf(a):
        raise DomainError(f"sinh chart value must be finite and negative, got {a!r}")
    return 2.0 * math.asinh(1.0 / math.sqrt(-a))


def length_from_b(b: float) -> float:
    """Inverse of :func:`b_from_length`, defined for ``0 < b < 1``."""
    b = float(b)
    if not 0.0 < b < 1.0:
        raise DomainError(f"cosh chart value must lie in (0, 1), got {b!r}")
    return 2.0 * math.asinh(math.sqrt((1.0 - b) / b))


def b_from_a(a: float) -> float:
    a = float(a)
    if not a < 0.0:
        raise DomainError(f"sinh chart value must be negative, got {a!r}")
    if math.isinf(a):
        return 1.0
    return -a / (1.0 - a)


def a_from_b(b: float) -> float:
    b = float(b)
    if not 0.0 < b < 1.0:
        raise DomainError(f"cosh chart value must lie in (0, 1), got {b!r}")
    return -b / (1.0 - b)


@dataclass(frozen=True)
class QuadChart:
    """The three parameters of a normalized ideal quadrilateral."""

    l: float
    a: float
    b: float

    @classmethod
    def from_length(cls, l: float) -> "QuadChart":
        return cls(float(l), a_from_length(l), b_from_length(l))

    @classmethod
    def from_a(cls, a: float) -> "QuadChart":
        return cls(length_from_a(a), float(a), b_from_a(a))

    @classmethod
    def from_b(cls, b: float) -> "QuadChart":
        return cls(length_from_b(b), a_from_b(b), float(b))


@dataclass(frozen=True)
class CriticalPair:
    """Critical points of ``f`` and the critical values there.

    ``f`` has a local maximum ``f_x0`` at ``x0`` in ``(a, 0)`` and a local
    minimum ``f_y0`` at ``y0`` in ``(1, inf)``; ``f_x0 * f_y0 == a**2``.
    """

    x0: float
    y0: float
    f_x0: float
    f_y0: float


def _finite_or_inf(z: float) -> float:
    z = float(z)
    if math.isnan(z):
        raise DomainError("boundary point is NaN")
    if math.isinf(z):
        return INF
    return z


def cross_ratio(z1: float, z2: float, z3: float, z4: float) -> float:
    """``(z1 - z2)(z4 - z3) / ((z1 - z3)(z4 - z2))`` on the extended real line.

    One of the points may be infinite (either sign); the two factors that
    contain it cancel exactly.

    Raises
    ------
    DegenerateConfigurationError
        If two points coincide or more than one is infinite.
    """
    zs = [_finite_or_inf(z) for z in (z1, z2, z3, z4)]
    n_inf = sum(math.isinf(z) for z in zs)
    if n_inf > 1:
        raise DegenerateConfigurationError("at most one boundary point may be infinite")
    finite = [z for z in zs if not math.isinf(z)]
    if len(set(finite)) != len(finite):
        raise DegenerateConfigurationError(f"boundary points must be distinct, got {zs}")
    z1, z2, z3, z4 = zs
    if math.isinf(z1):
        return (z4 - z3) / (z4 - z2)
    if math.isinf(z2):
        return (z4 - z3) / (z1 - z3)
    if math.isinf(z3):
        return (z1 - z2) / (z4 - z2)
    if math.isinf(z4):
        return (z1 - z2) / (z1 - z3)
    return (z1 - z2) * (z4 - z3) / ((z1 - z3) * (z4 - z2))


def mobius(m: tuple[float, float, float, float], z: float) -> float:
    """Apply ``z -> (p z + q) / (r z + s)`` to an extended-real point.

    ``m = (p, q, r, s)`` with ``p s - q r != 0``.  The image of ``inf`` is
    ``p / r``, and the pole ``-s / r`` maps to ``inf``.
    """
    p, q, r, s = m
    if p * s - q * r == 0.0:
        raise DomainError("Mobius map must be invertible")
    z = _finite_or_inf(z)
    if math.isinf(z):
        return INF if r == 0.0 else p / r
    den = r * z + s
    if den == 0.0:
        return INF
    return (p * z + q) / den


def f_rational(x: float, a: float) -> float:
    """``f(x) = x (x - a) / (x - 1)``."""
    x = float(x)
    if x == 1.0:
        raise PoleError("f has a pole at x = 1")
    return x * (x - a) / (x - 1.0)


def critical_points(a: float) -> CriticalPair:
    """Critical points ``1 -+ sqrt(1 - a)`` of ``f`` and its values there.

    The critical values use the closed forms ``(1 -+ sqrt(1 - a))**2``,
    which keep full relative accuracy as ``a -> 0-``.
    """
    a = float(a)
    if not a < 0.0 or math.isinf(a):
        raise DomainError(f"a must be finite and negative, got {a!r}")
    s = math.sqrt(1.0 - a)
    # 1 - s = a / (1 + s) avoids cancellation for small |a|
    x0 = a / (1.0 + s)
    y0 = 1.0 + s
    return CriticalPair(x0=x0, y0=y0, f_x0=x0 * x0, f_y0=y0 * y0)


def g_inverse(w: float, a: float, branch: Literal["plus", "minus"]) -> float:
    """Real root of ``f(x) = w``, i.e. of ``x**2 - (a + w) x + w = 0``.

    ``branch="plus"`` picks the larger root and ``"minus"`` the smaller.
    The discriminant is evaluated as ``(w - f_x0)(w - f_y0)`` and the
    smaller-magnitude root through the product of roots, so neither the
    critical values nor ``w -> 0`` lose precision.

    Raises
    ------
    BranchGapError
        If ``f_x0 < w < f_y0``, where there is no real root.
    """
    if branch not in ("plus", "minus"):
        raise DomainError(f"branch must be 'plus' or 'minus', got {branch!r}")
    w = float(w)
    cp = critical_points(a)
    if cp.f_x0 < w < cp.f_y0:
        raise BranchGapError(
            f"w={w!r} lies in the gap ({cp.f_x0!r}, {cp.f_y0!r}) between critical values")
    disc = (w - cp.f_x0) * (w - cp.f_y0)
    p = a + w
    root = math.sqrt(max(disc, 0.0))
    big = 0.5 * (p + math.copysign(root, p))
    if big == 0.0:
        return 0.0
    small = w / big
    lo, hi = (big, small) if big < small else (small, big)
    return hi if branch == "plus" else lo


def _check_rectangle(x: float, y: float, a: float) -> None:
    if not a < 0.0:
        raise DomainError(f"a must be negative, got {a!r}")
    if not a < x < 0.0:
        raise DomainError(f"x must lie in (a, 0) = ({a}, 0), got {x!r}")
    if not y > 1.0:
        raise DomainError(f"y must exceed 1, got {y!r}")


def intersection_length(x: float, y: float, a: float) -> float:
    """Length of the arc of geodesic ``(x, y)`` inside the quadrilateral.

    Equal to ``1/2 log(f(y) / f(x))``; minimized at the critical pair,
    where it is the distance between the sides ``(a, 0)`` and ``(1, inf)``.
    """
    x, y, a = float(x), float(y), float(a)
    _check_rectangle(x, y, a)
    if math.isinf(y):
        return INF
    return 0.5 * (math.log(y) + math.log(y - a) - math.log(y - 1.0)
                  - math.log(-x) - math.log(x - a) + math.log1p(-x))


def triangle_length_l1(x: float, y: float) -> float:
    """Arc length in the triangle ``(0, 1, inf)`` of a geodesic from ``x < 0`` to ``0 < y < 1``."""
    x, y = float(x), float(y)
    if not x < 0.0 or not 0.0 < y < 1.0:
        raise DomainError(f"need x < 0 and 0 < y < 1, got ({x!r}, {y!r})")
    if math.isinf(x):
        return INF
    return 0.5 * (math.log1p(-x) - math.log1p(-y))


def triangle_length_l2(x: float, y: float) -> float:
    """Arc length in the triangle ``(0, 1, inf)`` of a geodesic from ``x < 0`` to ``y > 1``."""
    x, y = float(x), float(y)
    if not x < 0.0 or not y > 1.0:
        raise DomainError(f"need x < 0 and y > 1, got ({x!r}, {y!r})")
    if math.isinf(x) or math.isinf(y):
        return INF
    return 0.5 * (math.log(y) + math.log1p(-x) - math.log(-x) - math.log(y - 1.0))
