import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from ortholab import hypgeom as hg
from ortholab.errors import BranchGapError, DegenerateConfigurationError, DomainError, PoleError

from oracles import arc_between_sides

PHI = (1 + math.sqrt(5)) / 2
INF = math.inf

lengths = st.floats(min_value=1e-3, max_value=30.0)
chart_a = st.floats(min_value=-1e4, max_value=-1e-4)


def test_chart_examples():
    assert hg.a_from_length(2 * math.asinh(1)) == pytest.approx(-1.0, rel=1e-15)
    assert hg.a_from_length(2 * math.log(1 + math.sqrt(2))) == pytest.approx(-1.0, rel=1e-15)
    l_pent = 2 * math.acosh(PHI)
    assert hg.a_from_length(l_pent) == pytest.approx(-1 / PHI, rel=1e-14)
    assert hg.length_from_a(-1.0) == pytest.approx(1.7627471740390861, rel=1e-15)
    assert hg.b_from_length(1e-9) == pytest.approx(1.0, abs=1e-15)


@given(lengths)
def test_chart_relations(l):
    a, b = hg.a_from_length(l), hg.b_from_length(l)
    assert a < 0 and 0 < b < 1
    assert b == pytest.approx(-a / (1 - a), rel=1e-13)
    # a = -b / (1 - b) amplifies the rounding of b by 1 / (1 - b)
    assert hg.a_from_b(b) == pytest.approx(a, rel=1e-14 / (1 - b))
    assert hg.b_from_a(a) == pytest.approx(b, rel=1e-13)
    assert hg.length_from_a(a) == pytest.approx(l, rel=1e-12)
    assert hg.length_from_b(b) == pytest.approx(l, rel=1e-8, abs=1e-12)


@given(lengths)
def test_reciprocal_lengths(l):
    # sinh(l/2) sinh(l'/2) = 1 pairs the two diagonals of a quadrilateral
    lp = 2 * math.asinh(1 / math.sinh(l / 2))
    assert hg.a_from_length(l) * hg.a_from_length(lp) == pytest.approx(1.0, rel=1e-12)
    assert hg.b_from_length(l) + hg.b_from_length(lp) == pytest.approx(1.0, abs=1e-13)


def test_quad_chart_constructors():
    c = hg.QuadChart.from_a(-1.0)
    assert c.b == pytest.approx(0.5) and c.l == pytest.approx(hg.length_from_a(-1.0))
    assert hg.QuadChart.from_b(0.5).a == pytest.approx(-1.0)
    assert hg.QuadChart.from_length(c.l).a == pytest.approx(-1.0)


@pytest.mark.parametrize("l", [0.3, 1.0, 2.5])
def test_cross_ratio_charts(l):
    e = math.exp(l)
    assert hg.cross_ratio(-1, 1, e, -e) == pytest.approx(1 / math.cosh(l / 2) ** 2, rel=1e-13)
    assert hg.cross_ratio(-1, 1, -e, e) == pytest.approx(-1 / math.sinh(l / 2) ** 2, rel=1e-13)


@pytest.mark.parametrize("pos", range(4))
@pytest.mark.parametrize("sign", [1, -1])
def test_cross_ratio_infinity_matches_large_limit(pos, sign):
    pts = [0.0, 0.25, 0.5]
    pts.insert(pos, sign * INF)
    big = [sign * 1e12 if math.isinf(p) else p for p in pts]
    assert hg.cross_ratio(*pts) == pytest.approx(hg.cross_ratio(*big), rel=1e-8)


def test_cross_ratio_degenerate():
    with pytest.raises(DegenerateConfigurationError):
        hg.cross_ratio(0, 0, 1, 2)
    with pytest.raises(DegenerateConfigurationError):
        hg.cross_ratio(INF, -INF, 1, 2)
    with pytest.raises(DomainError):
        hg.cross_ratio(math.nan, 0, 1, 2)


def test_cross_ratio_mobius_invariance():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        m = rng.normal(size=4)
        if m[0] * m[3] - m[1] * m[2] < 0:
            m[0], m[1] = -m[0], -m[1]
        pts = np.sort(rng.uniform(-3, 3, 4))
        before = hg.cross_ratio(*pts)
        after = hg.cross_ratio(*(hg.mobius(tuple(m), z) for z in pts))
        worst = max(worst, abs(after - before) / max(1.0, abs(before)))
    assert worst < 1e-10


def test_mobius_infinity():
    assert hg.mobius((2, 1, 1, 0), INF) == 2.0
    assert hg.mobius((2, 1, 1, 0), 0.0) == INF
    assert hg.mobius((1, 0, 0, 1), INF) == INF
    with pytest.raises(DomainError):
        hg.mobius((1, 2, 2, 4), 0.0)


def test_f_examples():
    assert hg.f_rational(-1, -3) == pytest.approx(1.0)
    assert hg.f_rational(3, -3) == pytest.approx(9.0)
    with pytest.raises(PoleError):
        hg.f_rational(1.0, -3)


@pytest.mark.parametrize("a,x0,y0", [(-3.0, -1.0, 3.0), (-1.0, 1 - math.sqrt(2), 1 + math.sqrt(2))])
def test_critical_points_examples(a, x0, y0):
    cp = hg.critical_points(a)
    assert cp.x0 == pytest.approx(x0, rel=1e-15)
    assert cp.y0 == pytest.approx(y0, rel=1e-15)


@given(chart_a)
def test_critical_values(a):
    cp = hg.critical_points(a)
    s = math.sqrt(1 - a)
    assert a < cp.x0 < 0 < 1 < cp.y0
    assert cp.f_x0 * cp.f_y0 == pytest.approx(a * a, rel=1e-13)
    assert cp.f_x0 == pytest.approx(hg.f_rational(cp.x0, a), rel=1e-9)
    assert cp.f_y0 == pytest.approx((1 + s) ** 2, rel=1e-14)


def test_g_inverse_examples():
    assert hg.g_inverse(10, -3, "plus") == pytest.approx(5.0, rel=1e-15)
    assert hg.g_inverse(10, -3, "minus") == pytest.approx(2.0, rel=1e-15)
    assert hg.g_inverse(0.1, -3, "minus") == pytest.approx(-2.8650971698084904, rel=1e-14)
    assert hg.g_inverse(0.1, -3, "plus") == pytest.approx(-0.034902830191509584, rel=1e-13)
    with pytest.raises(BranchGapError):
        hg.g_inverse(4.0, -3, "plus")
    with pytest.raises(DomainError):
        hg.g_inverse(10, -3, "middle")


@given(chart_a, st.floats(min_value=1e-6, max_value=1e6))
def test_g_inverse_inverts_f(a, scale):
    cp = hg.critical_points(a)
    for w in (cp.f_x0 / (1 + scale), cp.f_y0 * (1 + scale)):
        for branch in ("plus", "minus"):
            x = hg.g_inverse(w, a, branch)
            assert hg.f_rational(x, a) == pytest.approx(w, rel=1e-8)


def test_quadrilateral_distance():
    cp = hg.critical_points(-3.0)
    assert hg.intersection_length(cp.x0, cp.y0, -3.0) == pytest.approx(math.log(3), rel=1e-15)
    assert 2 * math.asinh(1 / math.sqrt(3)) == pytest.approx(math.log(3), rel=1e-15)


@given(chart_a, st.floats(0.01, 0.99), st.floats(1e-3, 1e3))
def test_intersection_length_geometry(a, s, t):
    x, y = a * s, 1 + t
    got = hg.intersection_length(x, y, a)
    assert got == pytest.approx(arc_between_sides(x, y, (a, 0.0), (1.0, INF)), rel=1e-7, abs=1e-9)
    split = hg.triangle_length_l2(x, y) + hg.triangle_length_l1(y / a, x / a)
    assert got == pytest.approx(split, abs=1e-12)


@given(chart_a, st.floats(0.01, 0.99), st.floats(1e-3, 1e3))
def test_critical_pair_minimises(a, s, t):
    cp = hg.critical_points(a)
    assert hg.intersection_length(a * s, 1 + t, a) >= hg.intersection_length(cp.x0, cp.y0, a) - 1e-12
    assert hg.intersection_length(cp.x0, cp.y0, a) == pytest.approx(hg.length_from_a(a), rel=1e-12)


def test_triangle_lengths():
    assert hg.triangle_length_l2(-1, 2) == pytest.approx(math.log(2), rel=1e-15)
    assert hg.triangle_length_l1(-1, 0.5) == pytest.approx(math.log(2), rel=1e-15)
    # near y = 1 the chord runs up the cusp at vertex 1: length ~ log(2 / eps) / 2
    for eps in (1e-4, 1e-8, 1e-12):
        assert hg.triangle_length_l2(-1, 1 + eps) == pytest.approx(
            arc_between_sides(-1, 1 + eps, (0.0, INF), (1.0, INF)), rel=1e-6)
        assert hg.triangle_length_l2(-1, 1 + eps) == pytest.approx(0.5 * math.log(2 / eps), rel=1e-3)
    with pytest.raises(DomainError):
        hg.triangle_length_l1(1, 0.5)


@given(st.floats(-1e3, -1e-3), st.floats(1e-3, 1 - 1e-3), st.floats(1 + 1e-3, 1e3))
def test_triangle_lengths_geometry(x, y1, y2):
    assert hg.triangle_length_l1(x, y1) == pytest.approx(
        arc_between_sides(x, y1, (0.0, INF), (0.0, 1.0)), rel=1e-7, abs=1e-9)
    assert hg.triangle_length_l2(x, y2) == pytest.approx(
        arc_between_sides(x, y2, (0.0, INF), (1.0, INF)), rel=1e-7, abs=1e-9)


def test_rectangle_domain():
    with pytest.raises(DomainError):
        hg.intersection_length(0.5, 2.0, -1.0)
    with pytest.raises(DomainError):
        hg.intersection_length(-0.5, 0.5, -1.0)
