"""Registry of the numbered acceptance checks, grouped into suites.

Each check returns the measured worst error and the tolerance it is
held to.  ``python -m ortholab verify all`` runs every suite.
"""
from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import density, dilog, hypgeom, montecarlo, polygon
from .config import DEFAULTS, Tolerances

PI2 = math.pi * math.pi
PHI = 0.5 * (1.0 + math.sqrt(5.0))

SUITES = ("dilog", "polygon", "density", "montecarlo")


@dataclass
class CheckResult:
    key: str
    suite: str
    title: str
    measured: float
    tolerance: float
    passed: bool
    seconds: float = 0.0
    detail: str = ""
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Check:
    key: str
    suite: str
    title: str
    run: Callable[[int, Tolerances], tuple[float, float, bool, str, dict]]


_REGISTRY: list[Check] = []


def check(key: str, suite: str, title: str):
    def wrap(fn):
        _REGISTRY.append(Check(key, suite, title, fn))
        return fn
    return wrap


def _within(measured: float, tol: float, detail: str = "", **extra):
    return measured, tol, bool(measured <= tol), detail, extra


SPECIAL_VALUES = (
    (1.0, PI2 / 6.0),
    (0.5, PI2 / 12.0),
    (1.0 / PHI, PI2 / 10.0),
    (1.0 / PHI ** 2, PI2 / 15.0),
    (-1.0, -PI2 / 12.0),
    (-1.0 / PHI, -PI2 / 15.0),
    (-PHI, -PI2 / 10.0),
)


@check("1", "dilog", "Rogers L special values")
def _special_values(seed, tol):
    err = max(abs(dilog.rogers_l(x) - v) for x, v in SPECIAL_VALUES)
    return _within(err, 1e-12)


def functional_equation_errors(seed: int, n: int = 10_000) -> dict[str, float]:
    """Worst residual of each functional equation on ``n`` random points."""
    rng = montecarlo.rng_stream(seed, 101)
    L = dilog.rogers_l_array
    x = rng.uniform(0.0, 1.0, n)
    y = rng.uniform(0.0, 1.0, n)
    xi = np.exp(rng.uniform(-20.0, 20.0, n))
    out = {
        "reflection": np.max(np.abs(L(x) + L(1.0 - x) - PI2 / 6.0)),
        "inversion": np.max(np.abs(L(-xi) + L(-1.0 / xi) + PI2 / 6.0)),
        "landen": np.max(np.abs(L(-x / (1.0 - x)) + L(x))),
        "abel": np.max(np.abs(L(x) + L(y) - L(x * y) - L(x * (1 - y) / (1 - x * y))
                              - L(y * (1 - x) / (1 - x * y)))),
        "duplication": max(abs(dilog.li2(a) + dilog.li2(-a) - 0.5 * dilog.li2(a * a)) for a in x),
    }
    return {k: float(v) for k, v in out.items()}


@check("2", "dilog", "Functional equations on 10^4 random points each")
def _functional(seed, tol):
    errs = functional_equation_errors(seed)
    worst = max(errs, key=errs.get)
    return _within(errs[worst], 1e-10, f"worst: {worst}", **errs)


@check("3", "polygon", "Polygon identity, regular n = 3..12 and 1000 random polygons")
def _polygon_identity(seed, tol):
    worst = max(abs(polygon.identity_defect(polygon.regular_polygon(n))) for n in range(3, 13))
    rng = montecarlo.rng_stream(seed, 102)
    for _ in range(1000):
        n = int(rng.integers(4, 11))
        worst = max(worst, abs(polygon.identity_defect(polygon.random_polygon(n, rng))))
    return _within(worst, tol.identity_tol)


@check("4", "polygon", "Hexagon relation and quadrilateral reciprocity")
def _hexagon(seed, tol):
    hexagon = abs(6 * dilog.rogers_l(1 / 3) + 3 * dilog.rogers_l(0.25) - PI2 / 2)
    rng = montecarlo.rng_stream(seed, 103)
    recip = 0.0
    for _ in range(1000):
        spec = polygon.orthospectrum(polygon.random_polygon(4, rng))
        e1, e2 = spec.entries
        recip = max(recip, abs(e1.a * e2.a - 1.0), abs(e1.b + e2.b - 1.0))
    ok = hexagon <= 1e-12 and recip <= 1e-10
    return max(hexagon / 1e-12, recip / 1e-10), 1.0, ok, \
        f"hexagon {hexagon:.2e} (tol 1e-12), reciprocity {recip:.2e} (tol 1e-10)", {}


@check("5", "polygon", "Lewin series partial sum at R = 10^4")
def _lewin(seed, tol):
    r = np.arange(2, 10_001, dtype=float)
    terms = dilog.rogers_l_array(1.0 / (r * r))
    monotone = bool(np.all(terms > 0.0))
    err = abs(polygon.lewin_partial_sum(10_000) - PI2 / 6.0)
    return err, 2e-3, err <= 2e-3 and monotone, f"monotone={monotone}", {}


@check("6", "density", "G(a) double integral against -4 L(a)")
def _big_g(seed, tol):
    errs = {a: abs(density.big_g_quadrature(a) - density.big_g(a)) for a in (-0.1, -1.0, -10.0)}
    return _within(max(errs.values()), 1e-6, "", **{str(k): v for k, v in errs.items()})


J_GRID_Y = tuple(float(y) for y in np.geomspace(1.05, 60.0, 20))
J_GRID_A = (-0.1, -1.0, -10.0)


@check("7", "density", "Finite-difference derivative of J against I(y)")
def _antiderivative(seed, tol):
    h = 1e-5
    worst = 0.0
    for a in J_GRID_A:
        for y in J_GRID_Y:
            fd = (density.j_combination(y + h, a) - density.j_combination(y - h, a)) / (2 * h)
            worst = max(worst, abs(fd - density.inner_integral_I(y, a)))
    return _within(worst, 1e-6)


@check("8", "density", "Mass closure of rho against 8 L(b)")
def _mass(seed, tol):
    errs = {l: abs(density.rho_mass(l).value - density.total_mass_F(l)) for l in (0.5, 1.0, 2.0, 4.0)}
    return _within(max(errs.values()), tol.mass_tol, "", **{str(k): v for k, v in errs.items()})


ASYMPTOTIC_LENGTHS = (0.5, 1.0, 2.0)


@check("9", "density", "Large-t ratio rho/(16 t^2 e^-2t) against r(l)")
def _asymptote(seed, tol):
    rel = {}
    for l in ASYMPTOTIC_LENGTHS:
        t = max(20.0, 10.0 * l)
        rel[str(l)] = abs(density.asymptotic_ratio(l, t) / density.asymptotic_r(l) - 1.0)
    return _within(max(rel.values()), tol.asymptote_tol, "relative error per l", **rel)


def _mc_digest(*arrays) -> str:
    h = hashlib.sha256()
    for arr in arrays:
        h.update(np.ascontiguousarray(arr, dtype="<f8").tobytes())
    return h.hexdigest()[:16]


@check("10", "montecarlo", "Monte Carlo class mass and polygon totals")
def _mc_mass(seed, tol):
    res = montecarlo.mc_class_mass(-1.0, 1_000_000, seed)
    z = abs(res.mass - 2 * PI2 / 3) / res.stderr
    rel = {}
    digests = [_mc_digest(res.weights)]
    for n in (4, 5):
        m = montecarlo.mc_polygon_measure(polygon.regular_polygon(n), 1_000_000, seed)
        rel[n] = abs(m.total_mass / m.expected_total - 1.0)
        digests.append(m.digest()[:16])
    ok = z <= 3.0 and max(rel.values()) <= 0.01
    digest = hashlib.sha256("".join(digests).encode()).hexdigest()[:16]
    return z / 3.0, 1.0, ok, \
        f"class z-score {z:.2f} (tol 3), polygon totals rel {max(rel.values()):.2e} (tol 1e-2)", \
        {"digest": digest}


@check("11", "montecarlo", "Empirical length CDF against the rho CDF")
def _mc_shape(seed, tol):
    worst = 0.0
    res = montecarlo.mc_class_mass(-1.0, 1_000_000, seed)
    worst = max(worst, montecarlo.cdf_sup_distance(hypgeom.length_from_a(-1.0), res.lengths, res.weights))
    spec = polygon.orthospectrum(polygon.regular_polygon(5))
    for idx, e in enumerate(spec.entries):
        r = montecarlo.mc_class_mass(e.a, 1_000_000, seed, stream_id=idx + 1)
        worst = max(worst, montecarlo.cdf_sup_distance(e.l, r.lengths, r.weights))
    return _within(worst, 0.01)


def checks(suite: str = "all") -> list[Check]:
    if suite == "all":
        return list(_REGISTRY)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [c for c in _REGISTRY if c.suite == suite]


def run(suite: str = "all", seed: int = 0, tol: Tolerances = DEFAULTS) -> list[CheckResult]:
    out = []
    for c in checks(suite):
        start = time.perf_counter()
        measured, bound, passed, detail, extra = c.run(seed, tol)
        out.append(CheckResult(c.key, c.suite, c.title, float(measured), float(bound), passed,
                               time.perf_counter() - start, detail, extra))
    return out
