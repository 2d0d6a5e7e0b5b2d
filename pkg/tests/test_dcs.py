import itertools
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from utvpi.dcs import (Edge, all_pairs_distances, detect_negative_cycle, double, feasible_potentials,
                       integer_feasible, tighten_for_integers)
from utvpi.model import Constraint, Status, UtvpiInstance, evaluate, is_feasible
from utvpi.oracle import brute_ilp, brute_lo_halfgrid

from conftest import inst, utvpi_instances

FORCED_HALF = inst("""
    vars 2
    min 1*x1 + 1*x2
    c: +x1 +x2 >= 1
    c: -x1 -x2 >= -1
    c: +x1 -x2 >= 0
    c: -x1 +x2 >= 0
""")


def holds(g, y):
    return all(y[e.head] - y[e.tail] >= -e.weight for e in g.edges)


def test_two_variable_row_gives_two_edges():
    g = double(inst("vars 2\nmin 0\nc: +x1 +x2 >= 1"))
    u1, u2, v1, v2 = g.u(0), g.u(1), g.v(0), g.v(1)
    # u1 - v2 >= 1 and u2 - v1 >= 1
    assert set(g.edges) == {Edge(v2, u1, -1, 0), Edge(v1, u2, -1, 0)}
    assert (u1, u2, v1, v2) == (0, 1, 2, 3)


def test_single_variable_row_is_doubled():
    g = double(inst("vars 1\nmin 0\nc: +x1 >= 3"))
    # u1 - v1 >= 6
    assert g.edges == (Edge(g.v(0), g.u(0), -6, 0),)


def test_negative_forms():
    g = double(inst("vars 2\nmin 0\nc: -x1 -x2 >= -1\nc: -x2 >= 2\nc: +x1 -x2 >= 4"))
    u1, u2, v1, v2 = 0, 1, 2, 3
    assert set(g.edges) == {
        Edge(u2, v1, 1, 0), Edge(u1, v2, 1, 0),   # v1 - u2 >= -1, v2 - u1 >= -1
        Edge(u2, v2, -4, 1),                       # v2 - u2 >= 4
        Edge(u2, u1, -4, 2), Edge(v1, v2, -4, 2),  # u1 - u2 >= 4, v2 - v1 >= 4
    }


def test_edge_count_per_row_shape():
    # the two UTVPI rows of the three-variable fixture: x1 - x3 >= 0, -x2 >= -1
    instance = UtvpiInstance(3, (Constraint(((0, 1), (2, -1)), 0), Constraint(((1, -1),), -1)),
                             (3, 1, 0))
    assert len(double(instance).edges) == 3


def test_node_cost_scales_rational_objective():
    g = double(inst("vars 2\nmin 1/2*x1 - 1/3*x2"))
    assert g.scale == 6
    assert g.node_cost == (3, -2, -3, 2)


def test_negative_cycle_for_contradiction():
    g = double(inst("vars 2\nmin 0\nc: +x1 -x2 >= 1\nc: -x1 +x2 >= 0"))
    cycle = detect_negative_cycle(g)
    assert cycle is not None
    assert sum(e.weight for e in cycle) < 0
    assert all(a.head == b.tail for a, b in zip(cycle, cycle[1:] + cycle[:1]))
    assert {e.row for e in cycle} <= {0, 1}


def test_empty_system_has_no_cycle():
    assert detect_negative_cycle(double(UtvpiInstance(3, (), (0, 0, 0)))) is None
    assert feasible_potentials(double(UtvpiInstance(2, (), (0, 0)))) == [0, 0, 0, 0]


def test_forced_half_system_is_integer_infeasible():
    g = double(FORCED_HALF)
    assert detect_negative_cycle(g) is None
    assert detect_negative_cycle(tighten_for_integers(g)) is not None
    assert brute_ilp(FORCED_HALF, (-3, 3)).status is Status.INFEASIBLE
    assert not integer_feasible(FORCED_HALF)


def test_tightening_leaves_integral_bound_alone():
    g = double(inst("vars 1\nmin 0\nc: +x1 >= 1"))
    assert tighten_for_integers(g) == g
    assert integer_feasible(inst("vars 1\nmin 0\nc: +x1 >= 1"))


def test_tightening_rounds_odd_bound():
    # 2 x1 >= 1 derived from x1 + x2 >= 1 and x1 - x2 >= 0, so x1 >= 1 over the integers
    g = tighten_for_integers(double(inst("vars 2\nmin 0\nc: +x1 +x2 >= 1\nc: +x1 -x2 >= 0")))
    dist = all_pairs_distances(g.num_nodes, g.edges)
    assert dist[g.v(0)][g.u(0)] == -2


def test_all_pairs_distances_unreachable():
    dist = all_pairs_distances(3, [Edge(0, 1, 5), Edge(1, 2, -2)])
    assert dist[0][2] == 3
    assert dist[2][0] is None


@settings(max_examples=200, deadline=None)
@given(utvpi_instances(box=None), st.data())
def test_objective_preserved_for_any_potentials(instance, data):
    g = double(instance)
    y = data.draw(st.lists(st.integers(-20, 20), min_size=g.num_nodes, max_size=g.num_nodes))
    assert g.objective_of(y) == evaluate(instance, g.point_of(y))


@settings(max_examples=200, deadline=None)
@given(utvpi_instances(box=None), st.data())
def test_feasibility_equivalence(instance, data):
    # x satisfies the rows iff the symmetric potentials (x, -x) satisfy the graph
    g = double(instance)
    x = data.draw(st.lists(st.integers(-6, 6).map(lambda v: F(v, 2)),
                           min_size=instance.n, max_size=instance.n))
    assert is_feasible(instance, x)[0] == holds(g, list(x) + [-v for v in x])


@settings(max_examples=200, deadline=None)
@given(utvpi_instances())
def test_potentials_give_feasible_points(instance):
    g = double(instance)
    y = feasible_potentials(g)
    grid = brute_lo_halfgrid(instance)
    assert (y is not None) == (grid.status is Status.OPTIMAL)
    if y is not None:
        assert holds(g, y)
        assert is_feasible(instance, g.point_of(y))[0]
    else:
        assert detect_negative_cycle(g) is not None


@settings(max_examples=200, deadline=None)
@given(utvpi_instances(max_n=3))
def test_tightening_matches_integer_search(instance):
    found = any(is_feasible(instance, z)[0] for z in itertools.product(range(-3, 4), repeat=instance.n))
    assert integer_feasible(instance) == found
