import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ortholab import dilog
from ortholab.errors import DomainError

from oracles import li2_mp, rogers_l_mp

PI2 = math.pi ** 2
PHI = (1 + math.sqrt(5)) / 2

unit = st.floats(min_value=1e-9, max_value=1 - 1e-9)
negative = st.floats(min_value=-1e12, max_value=-1e-12)


@pytest.mark.parametrize("x", [-1e6, -50.0, -3.0, -1.0, -0.7, -0.3, -1e-5, 0.0, 1e-8, 0.2,
                               0.49, 0.5, 0.51, 0.8, 0.99, 1 - 1e-9, 1.0])
def test_li2_matches_mpmath(x):
    assert dilog.li2(x) == pytest.approx(li2_mp(x), rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("x", [-1e8, -20.0, -PHI, -1.0, -1 / PHI, -0.1, 1e-6, 0.3, 0.5, 1 / PHI,
                               0.75, 0.999999, 1.0])
def test_rogers_l_matches_mpmath(x):
    assert dilog.rogers_l(x) == pytest.approx(rogers_l_mp(x), rel=1e-14, abs=1e-15)


def test_simple_values():
    assert dilog.li2(0.0) == 0.0
    assert dilog.li2(1.0) == pytest.approx(PI2 / 6, abs=1e-15)
    assert dilog.li2(-1.0) == pytest.approx(-PI2 / 12, abs=1e-15)
    assert dilog.rogers_l(0.0) == 0.0
    assert dilog.rogers_l(0.5) == pytest.approx(PI2 / 12, abs=1e-15)
    assert dilog.rogers_l(1 / PHI) == pytest.approx(PI2 / 10, abs=1e-15)
    assert dilog.rogers_l(-1.0) == pytest.approx(-PI2 / 12, abs=1e-15)


def test_limit_at_minus_infinity():
    assert dilog.rogers_l_infinity() == pytest.approx(-PI2 / 6, abs=1e-15)
    assert dilog.rogers_l(-1e8) == pytest.approx(-PI2 / 6, abs=1e-6)
    assert dilog.rogers_l(-1.0) - dilog.rogers_l_infinity() == pytest.approx(PI2 / 12, abs=1e-15)


@pytest.mark.parametrize("fn", [dilog.li2, dilog.rogers_l])
@pytest.mark.parametrize("x", [1.0000001, 2.0, math.inf, math.nan])
def test_domain(fn, x):
    with pytest.raises(DomainError):
        fn(x)


def test_minus_infinity_endpoint():
    with pytest.raises(DomainError):
        dilog.li2(-math.inf)
    assert dilog.rogers_l(-math.inf) == dilog.rogers_l_infinity()


def test_array_matches_scalar():
    xs = np.concatenate([-np.geomspace(1e-6, 1e6, 50), np.linspace(0, 1, 51)])
    assert np.array_equal(dilog.rogers_l_array(xs), [dilog.rogers_l(x) for x in xs])


@pytest.mark.parametrize("k,x,expected", [
    (0, 0.5, 1.0),
    (0, -0.5, -1 / 3),
    (1, 0.5, math.log(2)),
    (2, 1.0, PI2 / 6),
])
def test_polylog_examples(k, x, expected):
    assert dilog.polylog(k, x) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("k", [2, 3, 4, 7])
@pytest.mark.parametrize("x", [-1.0, -0.6, -0.2, 0.0, 0.3, 0.5, 0.7, 0.95, 0.9999])
def test_polylog_matches_mpmath(k, x):
    import mpmath as mp
    assert dilog.polylog(k, x) == pytest.approx(float(mp.polylog(k, x)), rel=1e-13, abs=1e-16)


def test_polylog_domain():
    for bad in [(-1, 0.5), (2, 1.5), (3, -1.5)]:
        with pytest.raises(DomainError):
            dilog.polylog(*bad)


# functional equations as properties

@given(unit)
def test_reflection(x):
    assert dilog.rogers_l(x) + dilog.rogers_l(1 - x) == pytest.approx(PI2 / 6, abs=1e-13)


@given(st.floats(min_value=1e-12, max_value=1e12))
def test_inversion(x):
    assert dilog.rogers_l(-x) + dilog.rogers_l(-1 / x) == pytest.approx(-PI2 / 6, abs=1e-13)


@given(unit)
def test_landen(x):
    assert dilog.rogers_l(-x / (1 - x)) == pytest.approx(-dilog.rogers_l(x), abs=1e-13)


@given(unit, unit)
def test_abel_five_term(x, y):
    L = dilog.rogers_l
    d = (1 - x) + x * (1 - y)  # 1 - xy without cancellation
    rhs = L(x * y) + L(x * (1 - y) / d) + L(y * (1 - x) / d)
    assert L(x) + L(y) == pytest.approx(rhs, abs=1e-12)


@given(st.floats(min_value=-1.0, max_value=1.0))
def test_duplication(z):
    assert dilog.li2(z) + dilog.li2(-z) == pytest.approx(0.5 * dilog.li2(z * z), abs=1e-14)


@given(unit, unit)
def test_increasing_on_unit_interval(x, y):
    if x < y:
        assert dilog.rogers_l(x) <= dilog.rogers_l(y)


@given(negative, negative)
def test_decreasing_on_negative_axis(x, y):
    # L(x) falls monotonically from 0 to L(-inf)
    if x < y:
        assert dilog.rogers_l(x) <= dilog.rogers_l(y) + 1e-15


@settings(max_examples=50)
@given(st.floats(min_value=-1e6, max_value=1.0))
def test_agrees_with_mpmath_everywhere(x):
    assert dilog.rogers_l(x) == pytest.approx(rogers_l_mp(x), rel=1e-13, abs=1e-14)
