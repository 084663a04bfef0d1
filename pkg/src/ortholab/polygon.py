"""Ideal polygons, their orthospectra and the finite dilogarithm identities.

Vertices live on the circle at infinity of the disk model and are stored
as angles in radians, listed anticlockwise.  Side ``i`` joins vertex ``i``
to vertex ``i + 1`` (indices mod ``n``).  Each unordered pair of disjoint
sides carries one orthogeodesic, whose cosh-chart value is the cross-ratio
``[x_i, x_{i+1}, x_j, x_{j+1}]``.  For every ideal ``n``-gon::

    sum over pairs of L(b_ij) = (n - 3) pi**2 / 6
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .dilog import rogers_l, rogers_l_array
from .errors import ConsistencyError, DegenerateConfigurationError, DomainError
from .hypgeom import a_from_b, a_from_length, b_from_length, length_from_b, mobius

TWO_PI = 2.0 * math.pi
PI2 = math.pi * math.pi

__all__ = [
    "IdealPolygon",
    "OrthoGeodesic",
    "OrthoSpectrum",
    "orthospectrum",
    "identity_defect",
    "pentagon_cross_ratios",
    "regular_polygon",
    "regular_spectrum",
    "regular_terms",
    "finite_relation",
    "random_polygon",
    "lewin_partial_sum",
    "lewin_tail_estimate",
    "general_identity_residual",
    "polygon_report",
]


def real_to_angle(x: float) -> float:
    """Boundary point of the upper half-plane to its angle on the unit circle.

    ``x -> (x - i)/(x + i)`` sends ``inf`` to angle 0 and the real line,
    in increasing order, onto ``(0, 2 pi)``.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("vertex is NaN")
    if math.isinf(x):
        return 0.0
    return math.pi + 2.0 * math.atan(x)


def angle_to_real(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta == 0.0:
        return math.inf
    return math.tan(0.5 * (theta - math.pi))


def _ccw_gap(alpha: float, beta: float) -> float:
    # anticlockwise angle from alpha to beta, in [0, 2 pi)
    d = math.fmod(beta - alpha, TWO_PI)
    if d < 0.0:
        d += TWO_PI
    return d


@dataclass(frozen=True)
class IdealPolygon:
    """Ideal polygon given by its vertex angles in anticlockwise order.

    The list may start at any vertex; only the cyclic order matters.
    """

    angles: tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(t) for t in self.angles)
        if len(angles) < 3:
            raise DomainError(f"an ideal polygon needs at least 3 vertices, got {len(angles)}")
        if not all(math.isfinite(t) for t in angles):
            raise DomainError("vertex angles must be finite")
        angles = tuple(t % TWO_PI for t in angles)
        n = len(angles)
        gaps = [_ccw_gap(angles[k], angles[(k + 1) % n]) for k in range(n)]
        if min(gaps) == 0.0:
            raise DegenerateConfigurationError("polygon vertices must be distinct")
        if abs(math.fsum(gaps) - TWO_PI) > 1e-9:
            raise DomainError("vertices are not in anticlockwise cyclic order")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def from_degrees(cls, degrees: Iterable[float]) -> "IdealPolygon":
        return cls(tuple(math.radians(d) for d in degrees))

    @classmethod
    def from_reals(cls, points: Iterable[float]) -> "IdealPolygon":
        """Build from extended-real vertices in the upper half-plane model.

        The points must be listed in increasing cyclic order along the real
        line, with at most one ``inf``.
        """
        pts = [float(p) for p in points]
        if sum(math.isinf(p) for p in pts) > 1:
            raise DegenerateConfigurationError("at most one vertex may be infinite")
        return cls(tuple(real_to_angle(p) for p in pts))

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def area(self) -> float:
        return (self.n - 2) * math.pi

    @property
    def euler_characteristic(self) -> float:
        """Orbifold Euler characteristic ``(n - 2) / 2`` in absolute value."""
        return 0.5 * (self.n - 2)

    @property
    def n_cusps(self) -> int:
        return self.n

    def degrees(self) -> list[float]:
        return [math.degrees(t) for t in self.angles]

    def reals(self) -> list[float]:
        return [angle_to_real(t) for t in self.angles]

    def side(self, i: int) -> tuple[float, float]:
        """Endpoint angles of side ``i``."""
        return self.angles[i % self.n], self.angles[(i + 1) % self.n]

    def transform(self, m: tuple[float, float, float, float]) -> "IdealPolygon":
        """Image under an orientation-preserving real Mobius map ``(p, q, r, s)``."""
        p, q, r, s = m
        if not p * s - q * r > 0.0:
            raise DomainError("the Mobius map must have positive determinant")
        return IdealPolygon.from_reals(mobius(m, x) for x in self.reals())


@dataclass(frozen=True)
class OrthoGeodesic:
    """Common perpendicular between sides ``i`` and ``j`` (``i < j``)."""

    i: int
    j: int
    b: float
    l: float

    @property
    def a(self) -> float:
        return a_from_b(self.b)


@dataclass(frozen=True)
class OrthoSpectrum:
    """Orthogeodesics of a polygon, sorted by ``(i, j)``."""

    n: int
    entries: tuple[OrthoGeodesic, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[OrthoGeodesic]:
        return iter(self.entries)

    def b_values(self) -> np.ndarray:
        return np.array([e.b for e in self.entries], dtype=float)

    def lengths(self) -> np.ndarray:
        return np.array([e.l for e in self.entries], dtype=float)


def disjoint_side_pairs(n: int) -> list[tuple[int, int]]:
    """Unordered pairs ``(i, j)``, ``i < j``, of sides sharing no vertex."""
    return [(i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]


def side_pair_b(angles: Sequence[float], i: int, j: int) -> float:
    """Cross-ratio ``[x_i, x_{i+1}, x_j, x_{j+1}]`` from chord lengths on the circle."""
    n = len(angles)
    ti, ti1 = angles[i], angles[(i + 1) % n]
    tj, tj1 = angles[j], angles[(j + 1) % n]
    num = math.sin(0.5 * _ccw_gap(ti, ti1)) * math.sin(0.5 * _ccw_gap(tj, tj1))
    den = math.sin(0.5 * _ccw_gap(ti, tj)) * math.sin(0.5 * _ccw_gap(ti1, tj1))
    return num / den


def orthospectrum(polygon: IdealPolygon) -> OrthoSpectrum:
    """One orthogeodesic per unordered pair of disjoint sides."""
    entries = []
    for i, j in disjoint_side_pairs(polygon.n):
        b = side_pair_b(polygon.angles, i, j)
        entries.append(OrthoGeodesic(i, j, b, length_from_b(b)))
    return OrthoSpectrum(polygon.n, tuple(entries))


def identity_defect(polygon: IdealPolygon, spectrum: OrthoSpectrum | None = None) -> float:
    """``sum L(b_ij) - (n - 3) pi**2 / 6``; zero for every ideal polygon."""
    if spectrum is None:
        spectrum = orthospectrum(polygon)
    terms = rogers_l_array(spectrum.b_values()) if len(spectrum) else []
    return math.fsum(terms) - (polygon.n - 3) * PI2 / 6.0


def pentagon_cross_ratios(u: float, v: float) -> tuple[float, float, float, float, float]:
    """Orthospectrum cross-ratios of the pentagon ``(0, u, v, 1, inf)``."""
    u, v = float(u), float(v)
    if not 0.0 < u < v < 1.0:
        raise DomainError(f"need 0 < u < v < 1, got u={u!r}, v={v!r}")
    return (u, 1.0 - v, (v - u) / v, (v - u) / (1.0 - u), u * (1.0 - v) / (v * (1.0 - u)))


def regular_polygon(n: int) -> IdealPolygon:
    n = _check_order(n)
    return IdealPolygon(tuple(TWO_PI * k / n for k in range(n)))


def _check_order(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 3:
        raise DomainError(f"polygon order must be an integer >= 3, got {n!r}")
    return int(n)


def regular_terms(n: int) -> list[tuple[float, int]]:
    """Distinct cosh-chart values of the regular ``n``-gon with multiplicities.

    Sides ``r`` steps apart give ``b_r = sin(pi/n)**2 / sin(r pi/n)**2``;
    there are ``n`` such pairs for ``r < n/2`` and ``n/2`` for ``r = n/2``.
    """
    n = _check_order(n)
    out = []
    s1 = math.sin(math.pi / n) ** 2
    for r in range(2, n // 2 + 1):
        b = s1 / math.sin(r * math.pi / n) ** 2
        out.append((b, n // 2 if 2 * r == n else n))
    return out


def regular_spectrum(n: int) -> OrthoSpectrum:
    """Closed-form orthospectrum of the regular ``n``-gon."""
    n = _check_order(n)
    s1 = math.sin(math.pi / n) ** 2
    entries = []
    for i, j in disjoint_side_pairs(n):
        r = min(j - i, n - (j - i))
        b = s1 / math.sin(r * math.pi / n) ** 2
        entries.append(OrthoGeodesic(i, j, b, length_from_b(b)))
    return OrthoSpectrum(n, tuple(entries))


def finite_relation(n: int) -> tuple[float, float]:
    """Both sides of ``sum_r m_r L(b_r) = (n - 3) pi**2 / 6`` for the regular ``n``-gon."""
    terms = regular_terms(n)
    lhs = math.fsum(m * rogers_l(b) for b, m in terms)
    return lhs, (n - 3) * PI2 / 6.0


def random_polygon(n: int, rng: np.random.Generator, min_gap: float = 1e-3) -> IdealPolygon:
    """Uniform sorted vertex angles, rejecting samples with a gap below ``min_gap``."""
    n = _check_order(n)
    if n * min_gap >= TWO_PI:
        raise DomainError("minimum gap too large for this many vertices")
    while True:
        angles = np.sort(rng.uniform(0.0, TWO_PI, size=n))
        gaps = np.diff(np.append(angles, angles[0] + TWO_PI))
        if gaps.min() >= min_gap:
            return IdealPolygon(tuple(float(t) for t in angles))


def lewin_partial_sum(R: int) -> float:
    """``sum_{r=2}^{R} L(1/r**2)``, increasing to ``pi**2 / 6``."""
    if isinstance(R, bool) or int(R) != R or R < 2:
        raise DomainError(f"R must be an integer >= 2, got {R!r}")
    r = np.arange(2, int(R) + 1, dtype=float)
    return math.fsum(rogers_l_array(1.0 / (r * r)))


def lewin_tail_estimate(R: int) -> float:
    """Asymptotic size ``(2 + log R) / R`` of the omitted tail.

    The terms behave like ``(1 + log r) / r**2``; integrating from ``R``
    gives the estimate.
    """
    if R < 2:
        raise DomainError(f"R must be >= 2, got {R!r}")
    return (2.0 + math.log(R)) / R


def general_identity_residual(area: float, n_cusps: int, lengths: Iterable[float],
                              *, tol: float = 1e-10) -> float:
    """Residual of ``sum L(1/cosh(l/2)**2) = pi**2 (6 |chi| - N) / 12``.

    ``|chi| = area / (2 pi)``.  The same residual is also evaluated in the
    sinh chart, ``-sum L(-1/sinh(l/2)**2)``, and the two must agree.

    Raises
    ------
    ConsistencyError
        If the two chart evaluations differ by more than ``tol``.
    """
    if not area > 0.0:
        raise DomainError(f"area must be positive, got {area!r}")
    if n_cusps < 0:
        raise DomainError(f"cusp count must be non-negative, got {n_cusps!r}")
    lengths = [float(l) for l in lengths]
    rhs = PI2 * (6.0 * area / TWO_PI - n_cusps) / 12.0
    bs = [b_from_length(l) for l in lengths]
    cosh_form = math.fsum([rogers_l(b) for b in bs] + [-rhs])
    sinh_form = math.fsum([-rogers_l(a_from_length(l)) for l in lengths] + [-rhs])
    if abs(cosh_form - sinh_form) > tol:
        raise ConsistencyError(
            f"cosh and sinh chart residuals disagree: {cosh_form!r} vs {sinh_form!r}")
    return cosh_form


def polygon_report(polygon: IdealPolygon) -> dict:
    """JSON-ready summary ``{n, vertices_deg, ortho, defect}``."""
    spec = orthospectrum(polygon)
    return {
        "n": polygon.n,
        "vertices_deg": polygon.degrees(),
        "ortho": [{"i": e.i, "j": e.j, "b": e.b, "l": e.l} for e in spec],
        "defect": identity_defect(polygon, spec),
    }


def polygon_report_json(polygon: IdealPolygon) -> str:
    return json.dumps(polygon_report(polygon), indent=2)
