import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from utvpi.lconvex import (INF, Indicator, Linear, Sum, ceil_q, check_half_persistency, floor_q,
                           half_grid, half_neighborhood, instance_function, midpoint_check,
                           midpoint_sweep)
from utvpi.model import Status

from conftest import inst


def test_floor_ceil_examples():
    assert floor_q(F(5, 4)) == F(3, 2) and ceil_q(F(5, 4)) == 1
    assert floor_q(F(3, 4)) == F(1, 2) and ceil_q(F(3, 4)) == 1
    assert floor_q(F(-1, 4)) == F(-1, 2) and ceil_q(F(-1, 4)) == 0
    assert floor_q(F(3, 2)) == ceil_q(F(3, 2)) == F(3, 2)
    assert floor_q(2) == ceil_q(2) == 2
    with pytest.raises(ValueError):
        floor_q(F(1, 3))


@given(st.integers(-1000, 1000))
def test_floor_ceil_sum(quad):
    q = F(quad, 4)
    assert floor_q(q) + ceil_q(q) == 2 * q
    assert (2 * floor_q(q)).denominator == 1 and (2 * ceil_q(q)).denominator == 1


def test_infinity_arithmetic():
    assert INF + 3 is INF and 3 + INF is INF and INF + INF is INF
    assert INF >= INF and INF >= F(10 ** 9) and not F(10 ** 9) >= INF
    assert not (INF < INF)


def test_linear_midpoint_is_tight():
    g = Linear((F(3), F(-2)))
    for x, y in [((0, F(1, 2)), (F(3, 2), 1)), ((F(-1, 2), 2), (1, F(-3, 2)))]:
        mid = [(a + b) / 2 for a, b in zip(x, y)]
        lhs = g(x) + g(y)
        assert lhs == g(tuple(floor_q(v) for v in mid)) + g(tuple(ceil_q(v) for v in mid))
        assert midpoint_check(g, x, y)


def test_feasible_pair_for_sum_indicator():
    g = Indicator(((1, 0), (1, 1)), 0)
    assert midpoint_check(g, (F(1, 2), F(-1, 2)), (0, 0))


def test_three_variable_row_sweep_finds_witness():
    g = Indicator(((1, 0), (1, 1), (1, 2)), 2)
    witness = midpoint_sweep(g, 3, 0, 1)
    assert witness is not None
    x, y = witness
    assert not midpoint_check(g, x, y)


def test_sweep_reports_none_when_clean():
    assert midpoint_sweep(Indicator(((1, 0), (-1, 1)), 1), 2, -1, 1) is None


def test_midpoint_length_mismatch():
    with pytest.raises(ValueError):
        midpoint_check(Linear((1,)), (0,), (0, 1))


def test_half_grid_size():
    assert len(list(half_grid(2, -2, 2))) == 81


def test_half_neighborhood():
    assert half_neighborhood((F(1, 2),)) == [(0,), (1,)]
    assert half_neighborhood((1, F(3, 2))) == [(1, 1), (1, 2)]
    assert half_neighborhood((2, -3)) == [(2, -3)]
    for x in itertools.product([F(k, 2) for k in range(-3, 4)], repeat=3):
        frac = sum(v.denominator != 1 for v in x)
        assert len(half_neighborhood(x)) == 2 ** frac


def test_instance_function():
    instance = inst("vars 2\nmin 1*x1 + 1*x2\nc: +x1 +x2 >= 1")
    h = instance_function(instance)
    assert isinstance(h, Sum)
    assert h((F(1, 2), F(1, 2))) == 1
    assert h((0, 0)) is INF


def test_half_persistency_on_cover():
    instance = inst("vars 2\nmin 1*x1 + 1*x2\nc: +x1 +x2 >= 1")
    report = check_half_persistency(instance, (0, 3))
    assert report.ok and report.status is Status.OPTIMAL
    assert report.lo_optima >= 3  # (1/2,1/2), (0,1), (1,0) at least


def test_half_persistency_integral_optimum():
    instance = inst("vars 1\nmin 1*x1\nc: +x1 >= 2")
    report = check_half_persistency(instance, (0, 4))
    assert report.ok and report.lo_optima == 1 and report.ilo_value == 2
