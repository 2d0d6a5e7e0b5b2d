from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from utvpi.dcs import double
from utvpi.model import (Status, UtvpiInstance, evaluate, fix_rows, is_feasible,
                         is_half_integral, verify_dual_certificate)
from utvpi.oracle import brute_lo_halfgrid
from utvpi.relax import extract_dual, maximal_integrality, solve_lo

from conftest import inst, utvpi_instances
from test_dcs import FORCED_HALF


def test_nonnegative_objective_on_box_is_zero():
    instance = inst("""
        vars 3
        min 3*x1 + 1*x2
        c: +x1 -x3 >= 0
        c: -x2 >= -1
        c: +x1 >= 0
        c: +x3 >= 0
        c: +x2 >= 0
    """)
    sol = solve_lo(instance)
    assert sol.status is Status.OPTIMAL
    assert sol.value == 0
    assert sol.x == (0, 0, 0)


def test_single_lower_bound():
    sol = solve_lo(inst("vars 1\nmin 1*x1\nc: +x1 >= 3"))
    assert (sol.status, sol.x, sol.value) == (Status.OPTIMAL, (3,), 3)
    assert sol.certificate.y == (1,)


def test_forced_half_point():
    sol = solve_lo(FORCED_HALF)
    assert sol.x == (F(1, 2), F(1, 2))
    assert sol.value == 1
    assert brute_lo_halfgrid(FORCED_HALF, (-3, 3)).value == 1
    assert verify_dual_certificate(FORCED_HALF, sol.x, sol.certificate)


def test_unbounded_relaxation():
    instance = inst("vars 2\nmin 1*x1 - 2*x2\nc: +x1 -x2 >= 0")
    assert solve_lo(instance).status is Status.UNBOUNDED
    # the boxed optimum keeps falling as the box grows
    values = [brute_lo_halfgrid(instance, (-k, k)).value for k in (1, 2, 4, 8)]
    assert values == sorted(values, reverse=True) and len(set(values)) == 4


def test_infeasible_relaxation():
    assert solve_lo(inst("vars 1\nmin 0\nc: +x1 >= 1\nc: -x1 >= 0")).status is Status.INFEASIBLE


def test_no_rows_zero_objective():
    sol = solve_lo(UtvpiInstance(2, (), (0, 0)))
    assert sol.status is Status.OPTIMAL and sol.value == 0


def test_rational_objective():
    instance = inst("vars 2\nmin 1/3*x1 + 1/2*x2\nc: +x1 +x2 >= 1\nc: +x1 >= 0\nc: +x2 >= 0")
    sol = solve_lo(instance)
    assert sol.value == F(1, 3)
    assert verify_dual_certificate(instance, sol.x, sol.certificate)


def test_dual_of_covering_row():
    instance = inst("vars 2\nmin 1*x1 + 1*x2\nc: +x1 +x2 >= 2")
    assert solve_lo(instance).certificate.y == (1,)


def test_extract_dual_without_flows():
    instance = inst("vars 1\nmin 1*x1\nc: +x1 >= 3")
    assert extract_dual(instance, double(instance), None) is None


def test_maximal_integrality_on_integral_point():
    instance = inst("vars 1\nmin 1*x1\nc: +x1 >= 3")
    assert maximal_integrality(instance, (3,)) == (3,)


def test_maximal_integrality_fixes_half_pair():
    instance = inst("vars 2\nmin 1*x1 + 1*x2\nc: +x1 +x2 >= 1")
    x = maximal_integrality(instance, (F(1, 2), F(1, 2)))
    assert x in {(0, 1), (1, 0)}
    assert evaluate(instance, x) == 1


def test_maximal_integrality_keeps_forced_half():
    assert maximal_integrality(FORCED_HALF, (F(1, 2), F(1, 2))) == (F(1, 2), F(1, 2))


def test_maximal_integrality_rejects_non_optimal_point():
    instance = inst("vars 2\nmin 1*x1 + 1*x2\nc: +x1 +x2 >= 1")
    with pytest.raises(ValueError):
        maximal_integrality(instance, (1, 1))


@settings(max_examples=300, deadline=None)
@given(utvpi_instances())
def test_relaxation_matches_half_grid(instance):
    sol = solve_lo(instance)
    grid = brute_lo_halfgrid(instance)
    assert sol.status is grid.status
    if sol.status is Status.OPTIMAL:
        assert sol.value == grid.value
        assert all(is_half_integral(v) for v in sol.x)
        assert is_feasible(instance, sol.x)[0]
        assert sol.certificate is not None
        assert verify_dual_certificate(instance, sol.x, sol.certificate)
        y = sol.certificate.y
        assert sum((yi * row.bound for yi, row in zip(y, instance.constraints)), F(0)) == sol.value


@settings(max_examples=300, deadline=None)
@given(utvpi_instances())
def test_solve_lo_is_deterministic(instance):
    assert solve_lo(instance) == solve_lo(instance)


@settings(max_examples=150, deadline=None)
@given(utvpi_instances(max_n=4))
def test_maximal_integrality_invariants(instance):
    sol = solve_lo(instance)
    if sol.status is not Status.OPTIMAL:
        return
    x = maximal_integrality(instance, sol.x)
    assert is_feasible(instance, x)[0]
    assert evaluate(instance, x) == sol.value
    assert all(is_half_integral(v) for v in x)
    assert all(x[j] == v for j, v in enumerate(sol.x) if v.denominator == 1)
    # no remaining fractional coordinate can be rounded without losing optimality
    integral = [row for j, v in enumerate(x) if v.denominator == 1 for row in fix_rows(j, int(v))]
    for j, v in enumerate(x):
        if v.denominator == 1:
            continue
        for target in (v - F(1, 2), v + F(1, 2)):
            probe = instance.with_rows(integral + fix_rows(j, int(target)))
            grid = brute_lo_halfgrid(probe)
            assert grid.status is Status.INFEASIBLE or grid.value > sol.value
