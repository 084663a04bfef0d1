"""Seeded Monte Carlo reproduction of the intersection-length measure.

Each orthogeodesic class is sampled in its normalized chart
``(a, 0) x (1, inf)`` from the proposal density ``1/(x - y)**2``, which has
total mass ``log(1 - a)`` and an explicit inverse CDF in each coordinate.
The importance weight of a sample is then ``4 L(x, y) log(1 - a)``.

Cusp classes have infinite proposal mass in their chart, so their
contribution uses the closed form ``4 t**2 / sinh(t)**2`` instead; it is
validated independently by :func:`cusp_identity_quadrature`.
"""
from __future__ import annotations

import hashlib
import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULTS, default_seed
from .density import cusp_density, cusp_total_mass, rho, total_mass_F
from .errors import DomainError
from .hypgeom import a_from_b, length_from_a
from .polygon import IdealPolygon, _ccw_gap, orthospectrum, real_to_angle
from .quadrature import gauss_kronrod, tanh_sinh

TWO_PI = 2.0 * math.pi

__all__ = [
    "rng_stream",
    "ClassMassResult",
    "ChordClass",
    "EmpiricalMeasure",
    "mc_class_mass",
    "chord_length",
    "chord_lengths",
    "mc_polygon_measure",
    "mc_global",
    "chart_to_polygon",
    "cusp_identity_quadrature",
    "predicted_cdf",
    "cdf_sup_distance",
    "run_report",
]

_CHUNK = 1 << 18


def rng_stream(seed: int | None = None, stream_id: int = 0) -> np.random.Generator:
    """Counter-based Philox generator keyed by ``(seed, stream_id)``.

    Different stream ids give independent substreams; the output is the
    same on every platform.  ``seed=None`` reads ``ORTHOLAB_SEED`` (default 0).
    """
    if seed is None:
        seed = default_seed()
    if not 0 <= seed < 2 ** 64 or not 0 <= stream_id < 2 ** 64:
        raise DomainError("seed and stream_id must be integers in [0, 2**64)")
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) | int(stream_id)))


def _open_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    # (k + 1/2) / 2**53 never hits 0 or 1
    return (rng.integers(0, 1 << 53, size=size, dtype=np.int64) + 0.5) * (1.0 / (1 << 53))


@dataclass
class ClassMassResult:
    """Importance-sampled mass of one orthogeodesic class."""

    a: float
    mass: float
    stderr: float
    n_samples: int
    seed: int
    stream_id: int
    lengths: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)


def _sample_chart(a: float, rng: np.random.Generator, n: int):
    log1ma = math.log1p(-a)
    v = _open_uniform(rng, n)
    w = _open_uniform(rng, n)
    mx = np.expm1(v * log1ma)                     # -x
    xa = -(1.0 - a) * np.expm1(-(1.0 - v) * log1ma)   # x - a
    omx = 1.0 + mx                                # 1 - x
    ym1 = omx * w / (1.0 - w)                     # y - 1
    length = 0.5 * (np.log1p(ym1) + np.log((1.0 - a) + ym1) - np.log(ym1)
                    - np.log(mx) - np.log(xa) + np.log1p(mx))
    return -mx, 1.0 + ym1, length


def mc_class_mass(a: float, n_samples: int, seed: int | None = None, stream_id: int = 0,
                  *, keep_points: bool = False) -> ClassMassResult:
    """Estimate ``integral of 4 L(x, y) dx dy / (x - y)**2`` over the chart.

    The exact value is ``-8 L(a)``.  Samples are drawn in chunks of
    ``2**18``; chunk ``k`` uses substream ``stream_id * 2**32 + k`` so the
    estimate does not depend on how the work is scheduled.
    """
    a = float(a)
    if not a < 0.0 or math.isinf(a):
        raise DomainError(f"a must be finite and negative, got {a!r}")
    n_samples = int(n_samples)
    if n_samples < 1:
        raise DomainError("need at least one sample")
    seed = default_seed() if seed is None else int(seed)
    scale = 4.0 * math.log1p(-a)
    lengths, xs, ys = [], [], []
    for k, start in enumerate(range(0, n_samples, _CHUNK)):
        rng = rng_stream(seed, (stream_id << 32) + k)
        x, y, length = _sample_chart(a, rng, min(_CHUNK, n_samples - start))
        lengths.append(length)
        if keep_points:
            xs.append(x)
            ys.append(y)
    length = np.concatenate(lengths)
    weights = scale * length
    mass = float(weights.mean())
    stderr = float(weights.std(ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else math.inf
    empty = np.empty(0)
    return ClassMassResult(a, mass, stderr, n_samples, seed, stream_id, length, weights,
                           np.concatenate(xs) if keep_points else empty,
                           np.concatenate(ys) if keep_points else empty)


@dataclass(frozen=True)
class ChordClass:
    """Homotopy class of a chord: ``("side_pair", i, j)``, ``("cusp", k, k)`` or ``("miss", -1, -1)``."""

    kind: str
    i: int = -1
    j: int = -1


MISS = ChordClass("miss")


def _vertex_offsets(polygon: IdealPolygon) -> np.ndarray:
    n = polygon.n
    gaps = [_ccw_gap(polygon.angles[k], polygon.angles[(k + 1) % n]) for k in range(n - 1)]
    return np.concatenate([[0.0], np.cumsum(gaps)])


def _arc_and_clearance(polygon: IdealPolygon, theta: np.ndarray):
    # arc k runs anticlockwise from vertex k to vertex k + 1
    offsets = _vertex_offsets(polygon)
    rel = np.mod(np.asarray(theta, dtype=float) - polygon.angles[0], TWO_PI)
    arc = np.searchsorted(offsets, rel, side="right") - 1
    ext = np.append(offsets, TWO_PI)
    clearance = np.minimum(rel - ext[arc], ext[arc + 1] - rel)
    return arc, clearance, rel - ext[arc]


def _log_side_ratio(theta_p, theta_q, t0, t1):
    # log of |sin((t0-P)/2) sin((t1-P)/2)| / |sin((Q-t0)/2) sin((t1-Q)/2)|
    # an endpoint on a vertex gives log(0); those chords are flagged as tangent
    with np.errstate(divide="ignore", invalid="ignore"):
        return (np.log(np.abs(np.sin(0.5 * (t0 - theta_p)))) + np.log(np.abs(np.sin(0.5 * (t1 - theta_p))))
                - np.log(np.abs(np.sin(0.5 * (theta_q - t0)))) - np.log(np.abs(np.sin(0.5 * (t1 - theta_q)))))


def chord_lengths(polygon: IdealPolygon, theta_p, theta_q, *, tangency_tol: float | None = None):
    """Vectorised :func:`chord_length` on angles.

    Returns ``(length, kind, i, j)`` arrays with ``kind`` 0 = miss,
    1 = side pair, 2 = cusp.  Endpoints within ``tangency_tol`` of a vertex
    are cusp chords of infinite length.
    """
    tol = DEFAULTS.tangency_tol if tangency_tol is None else tangency_tol
    n = polygon.n
    tp = np.atleast_1d(np.asarray(theta_p, dtype=float))
    tq = np.atleast_1d(np.asarray(theta_q, dtype=float))
    arc_p, clear_p, _ = _arc_and_clearance(polygon, tp)
    arc_q, clear_q, _ = _arc_and_clearance(polygon, tq)
    angles = np.asarray(polygon.angles)
    lo = np.minimum(arc_p, arc_q)
    hi = np.maximum(arc_p, arc_q)
    kind = np.where(arc_p == arc_q, 0, np.where((hi - lo == 1) | ((lo == 0) & (hi == n - 1)), 2, 1))
    length = np.zeros(tp.shape)
    live = kind != 0
    if live.any():
        ratio_p = _log_side_ratio(tp, tq, angles[arc_p], angles[(arc_p + 1) % n])
        ratio_q = _log_side_ratio(tp, tq, angles[arc_q], angles[(arc_q + 1) % n])
        length = np.where(live, 0.5 * np.abs(ratio_q - ratio_p), 0.0)
    tangent = live & ((clear_p < tol) | (clear_q < tol))
    cusp_vertex = np.where((hi - lo == 1), hi, 0)
    # a tangent endpoint sits on a vertex: the chord runs out into that cusp
    near_p = np.where(clear_p < tol, _nearest_vertex(polygon, tp), -1)
    near_q = np.where(clear_q < tol, _nearest_vertex(polygon, tq), -1)
    tangent_vertex = np.where(near_p >= 0, near_p, near_q)
    kind = np.where(tangent, 2, kind)
    length = np.where(tangent, np.inf, length)
    i_out = np.where(kind == 1, lo, np.where(kind == 2, np.where(tangent, tangent_vertex, cusp_vertex), -1))
    j_out = np.where(kind == 1, hi, i_out)
    return length, kind, i_out, j_out


def _nearest_vertex(polygon: IdealPolygon, theta: np.ndarray) -> np.ndarray:
    angles = np.asarray(polygon.angles)
    d = np.abs(np.angle(np.exp(1j * (theta[:, None] - angles[None, :]))))
    return np.argmin(d, axis=1)


def chord_length(polygon: IdealPolygon, x: float, y: float, *, chart: str = "angle",
                 tangency_tol: float | None = None) -> tuple[float, ChordClass]:
    """Length of the arc of geodesic ``(x, y)`` inside ``polygon`` and its class.

    ``chart="angle"`` takes boundary angles in radians; ``chart="real"``
    takes extended-real points of the upper half-plane.  The class is
    ``side_pair(i, j)`` when the chord joins disjoint sides ``i < j``,
    ``cusp(k)`` when it joins the two sides at vertex ``k``, and ``miss``
    (length 0) when the geodesic does not enter the polygon.
    """
    if chart == "real":
        x, y = real_to_angle(x), real_to_angle(y)
    elif chart != "angle":
        raise DomainError(f"unknown chart {chart!r}")
    if math.isclose(math.fmod(x - y, TWO_PI), 0.0, abs_tol=0.0):
        raise DomainError("geodesic endpoints must differ")
    length, kind, i, j = chord_lengths(polygon, [x], [y], tangency_tol=tangency_tol)
    k = int(kind[0])
    if k == 0:
        return 0.0, MISS
    if k == 1:
        return float(length[0]), ChordClass("side_pair", int(i[0]), int(j[0]))
    return float(length[0]), ChordClass("cusp", int(i[0]), int(i[0]))


def chart_to_polygon(polygon: IdealPolygon, i: int, j: int, x: np.ndarray) -> np.ndarray:
    """Angles on the polygon's circle of chart points ``x`` for side pair ``(i, j)``.

    The chart map sends ``v_{i+1} -> 0``, ``v_j -> 1``, ``v_{j+1} -> inf``
    (and therefore ``v_i -> a``); this is its inverse.
    """
    n = polygon.n
    w1 = np.exp(1j * polygon.angles[(i + 1) % n])
    w2 = np.exp(1j * polygon.angles[j % n])
    w3 = np.exp(1j * polygon.angles[(j + 1) % n])
    x = np.asarray(x, dtype=float)
    z = (x * w3 * (w2 - w1) - w1 * (w2 - w3)) / (x * (w2 - w1) - (w2 - w3))
    return np.mod(np.angle(z), TWO_PI)


@dataclass
class EmpiricalMeasure:
    """Weighted histogram of intersection lengths; the last bin absorbs the tail."""

    bin_edges: np.ndarray
    masses: np.ndarray
    total_mass: float
    n_samples: int
    seed: int
    per_class: list = field(default_factory=list)
    cusp_mass: float = 0.0
    expected_total: float = math.nan

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.bin_edges, dtype="<f8").tobytes())
        h.update(np.ascontiguousarray(self.masses, dtype="<f8").tobytes())
        h.update(repr((self.n_samples, self.seed, self.total_mass)).encode())
        return h.hexdigest()


def _bin(lengths: np.ndarray, weights: np.ndarray, edges: np.ndarray) -> np.ndarray:
    idx = np.clip(np.searchsorted(edges, lengths, side="right") - 1, 0, len(edges) - 2)
    return np.bincount(idx, weights=weights, minlength=len(edges) - 1)


def _cusp_bins(n_cusps: int, edges: np.ndarray) -> np.ndarray:
    out = np.empty(len(edges) - 1)
    for k in range(len(edges) - 1):
        hi = math.inf if k == len(edges) - 2 else edges[k + 1]
        lo = 0.0 if k == 0 else edges[k]
        out[k] = gauss_kronrod(lambda t: cusp_density(n_cusps, t), lo, hi,
                               abs_tol=1e-14, rel_tol=1e-12).value
    return out


def mc_polygon_measure(polygon: IdealPolygon, n_samples: int, seed: int | None = None,
                       bins: Sequence[float] | int = 80, *, workers: int | None = None,
                       validate: int = 256) -> EmpiricalMeasure:
    """Empirical intersection-length measure of ``polygon``.

    Every orthogeodesic class gets ``n_samples`` importance samples in its
    own chart (substream = class index); cusps contribute their closed-form
    density.  ``validate`` samples per class are mapped back onto the
    polygon and must reproduce the class and the chart length.

    ``bins`` is either an edge array or a bin count for ``[0, 20]``.
    """
    seed = default_seed() if seed is None else int(seed)
    edges = np.linspace(0.0, 20.0, int(bins) + 1) if np.isscalar(bins) else np.asarray(bins, float)
    if edges.ndim != 1 or len(edges) < 2 or not np.all(np.diff(edges) > 0) or edges[0] < 0:
        raise DomainError("bin edges must be non-negative and strictly increasing")
    spectrum = orthospectrum(polygon)

    def run(idx_entry):
        idx, entry = idx_entry
        res = mc_class_mass(a_from_b(entry.b), n_samples, seed, stream_id=idx + 1,
                            keep_points=validate > 0)
        if validate > 0:
            _validate_back_map(polygon, entry.i, entry.j, res, validate)
        return res

    items = list(enumerate(spectrum.entries))
    if workers == 1 or len(items) < 2:
        results = [run(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, items))

    masses = _cusp_bins(polygon.n, edges)
    per_class = []
    for entry, res in zip(spectrum.entries, results):
        masses = masses + _bin(res.lengths, res.weights, edges) / res.n_samples
        per_class.append({"i": entry.i, "j": entry.j, "l": entry.l, "mass": res.mass,
                          "stderr": res.stderr, "expected": total_mass_F(entry.l)})
    cusp = cusp_total_mass(polygon.n)
    total = math.fsum([cusp] + [c["mass"] for c in per_class])
    return EmpiricalMeasure(edges, masses, total, n_samples, seed, per_class, cusp,
                            2.0 * math.pi ** 2 * (polygon.n - 2))


def _validate_back_map(polygon, i, j, res: ClassMassResult, count: int) -> None:
    x, y = res.x[:count], res.y[:count]
    keep = np.isfinite(y) & (np.abs(x) > 1e-6) & (y < 1e6) & (y - 1.0 > 1e-6)
    tx = chart_to_polygon(polygon, i, j, x[keep])
    ty = chart_to_polygon(polygon, i, j, y[keep])
    length, kind, ci, cj = chord_lengths(polygon, tx, ty)
    if not (np.all(kind == 1) and np.all(ci == i) and np.all(cj == j)):
        raise AssertionError(f"back-mapped samples of class ({i}, {j}) land in the wrong class")
    err = np.abs(length - res.lengths[:count][keep])
    if err.size and err.max() > 1e-6 * max(1.0, float(res.lengths[:count][keep].max())):
        raise AssertionError(f"back-mapped chord lengths disagree by {err.max():.3e}")


@dataclass(frozen=True)
class GlobalEstimate:
    total: float
    stderr: float
    expected: float
    class_fractions: dict


def mc_global(polygon: IdealPolygon, n_samples: int, seed: int | None = None,
              *, stream_id: int = 0) -> GlobalEstimate:
    """Naive estimator from uniform pairs of boundary angles.

    Each pair carries weight ``2 (2 pi)**2 chord / |e^{i p} - e^{i q}|**2``.
    Near-cusp chords give this estimator a heavy tail, so it is only a
    smoke test; a warning is issued every time.
    """
    seed = default_seed() if seed is None else int(seed)
    rng = rng_stream(seed, stream_id)
    tp = rng.uniform(0.0, TWO_PI, n_samples)
    tq = rng.uniform(0.0, TWO_PI, n_samples)
    length, kind, _, _ = chord_lengths(polygon, tp, tq)
    finite = np.isfinite(length)
    chord2 = 4.0 * np.sin(0.5 * (tp - tq)) ** 2
    w = np.where(finite & (kind > 0), 2.0 * TWO_PI ** 2 * np.where(finite, length, 0.0) / chord2, 0.0)
    total = float(w.mean())
    stderr = float(w.std(ddof=1) / math.sqrt(n_samples))
    warnings.warn("global boundary sampler has heavy-tailed weights; treat its standard "
                  "error as optimistic", RuntimeWarning, stacklevel=2)
    fractions = {"miss": float(np.mean(kind == 0)), "side_pair": float(np.mean(kind == 1)),
                 "cusp": float(np.mean(kind == 2))}
    return GlobalEstimate(total, stderr, 2.0 * math.pi ** 2 * (polygon.n - 2), fractions)


def cusp_identity_quadrature(phi: Callable[[float], float] = lambda t: 1.0,
                             *, tol: float = 1e-10) -> tuple[float, float]:
    """Both sides of the cusp identity for one cusp.

    Returns ``(double, single)`` where ``double`` integrates
    ``4 phi(L) L / (x - y)**2`` over ``(-inf, 0) x (1, inf)`` for the
    triangle ``(0, 1, inf)`` and ``single`` integrates
    ``phi(t) 4 t**2 / sinh(t)**2`` over ``t > 0``.

    With ``x = -p/(1 - p)`` and ``y = 1 + u/(1 - u)`` the chord length is
    ``-log(p u) / 2`` and the measure becomes ``dp du / (1 - p u)**2``.
    """
    def outer(u, u_lo, u_hi):
        log_u = math.log(u_lo) if u_lo < 0.5 else math.log1p(-u_hi)

        def inner(p_lo, p_hi):
            log_p = math.log(p_lo) if p_lo < 0.5 else math.log1p(-p_hi)
            length = -0.5 * (log_p + log_u)
            gap = p_hi + p_lo * u_hi          # 1 - p u
            return 4.0 * phi(length) * length * p_hi / (gap * gap)

        # 1/(1 - p u)**2 peaks where 1 - p ~ 1 - u; in v = log(1 - p) the
        # peak has unit width, so split the v range there
        v_peak = math.log(min(0.5, u_hi))
        near = tanh_sinh(lambda v, lo, hi: inner(-math.expm1(v), math.exp(v)),
                         v_peak - 40.0, v_peak, tol=tol).value
        far = tanh_sinh(lambda v, lo, hi: inner(-math.expm1(-hi), math.exp(v)),
                        v_peak, 0.0, tol=tol).value
        return near + far

    double = tanh_sinh(outer, 0.0, 1.0, tol=tol).value
    single = gauss_kronrod(lambda t: phi(t) * cusp_density(1, t), 0.0, math.inf,
                           abs_tol=1e-13, rel_tol=1e-12).value
    return double, single


def predicted_cdf(l: float, edges: Sequence[float]) -> np.ndarray:
    """``integral from l to e of rho(l, t) dt / F(l)`` at each edge ``e``."""
    edges = np.asarray(edges, dtype=float)
    F = total_mass_F(l)
    out = np.zeros(len(edges))
    acc = 0.0
    prev = l
    for k, e in enumerate(edges):
        if e > prev:
            acc += gauss_kronrod(lambda t: rho(l, t, tol=1e-10), prev, e,
                                 abs_tol=1e-14, rel_tol=1e-10).value
            prev = e
        out[k] = acc / F
    return out


def cdf_sup_distance(l: float, lengths: np.ndarray, weights: np.ndarray,
                     edges: Sequence[float] | None = None) -> float:
    """Sup over bin edges of |weighted empirical CDF - predicted CDF|."""
    if edges is None:
        edges = l + np.linspace(0.0, 12.0, 241)
    edges = np.asarray(edges, dtype=float)
    order = np.argsort(lengths)
    cum = np.cumsum(weights[order])
    pos = np.searchsorted(lengths[order], edges, side="right")
    emp = np.where(pos > 0, cum[np.maximum(pos - 1, 0)], 0.0) / cum[-1]
    return float(np.max(np.abs(emp - predicted_cdf(l, edges))))


def run_report(measure: EmpiricalMeasure) -> dict:
    """JSON-ready run report."""
    return {
        "seed": measure.seed,
        "n_samples": measure.n_samples,
        "per_class": [{"i": c["i"], "j": c["j"], "mass": c["mass"], "stderr": c["stderr"]}
                      for c in measure.per_class],
        "cusp_mass": measure.cusp_mass,
        "total": measure.total_mass,
        "expected_total": measure.expected_total,
        "bins": {"edges": measure.bin_edges.tolist(), "masses": measure.masses.tolist()},
        "digest": measure.digest(),
    }


def run_report_json(measure: EmpiricalMeasure) -> str:
    return json.dumps(run_report(measure), indent=2)
