"""Exact half-integral solution of the LO relaxation of a UTVPI system.

The relaxation is mapped onto the doubled difference-constraint graph, whose
potential-minimization problem is the LP dual of an uncapacitated min-cost
flow with node demands ``node_cost``.  Integral optimal potentials ``y`` give
the half-integral point ``x_i = (y(u_i) - y(v_i)) / 2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .dcs import DiffGraph, detect_negative_cycle, double
from .flow import min_cost_flow
from .model import (
    DualCertificate,
    LpSolution,
    Status,
    UtvpiInstance,
    evaluate,
    fix_rows,
    is_feasible,
    verify_dual_certificate,
)


def solve_lo(instance: UtvpiInstance) -> LpSolution:
    g = double(instance)
    if detect_negative_cycle(g) is not None:
        return LpSolution(Status.INFEASIBLE)
    arcs = [(e.tail, e.head, e.weight) for e in g.edges]
    result = min_cost_flow(g.num_nodes, arcs, g.node_cost)
    if result is None:
        # potentials feasible but demands unroutable: the potential LP is unbounded
        return LpSolution(Status.UNBOUNDED)
    y = [-p for p in result.potentials]
    x = g.point_of(y)
    value = evaluate(instance, x)
    assert value == Fraction(-result.cost, 2 * g.scale), "flow/potential duality gap"
    cert = extract_dual(instance, g, result.flows)
    if cert is not None and not verify_dual_certificate(instance, x, cert):
        cert = None
    return LpSolution(Status.OPTIMAL, x, value, cert)


def extract_dual(
    instance: UtvpiInstance, g: DiffGraph, flows: Optional[Sequence[int]]
) -> Optional[DualCertificate]:
    """Turn arc flows on the doubled graph into row multipliers.

    A two-variable row owns two arcs and gets ``(f1 + f2) / (2D)``; a
    single-variable row owns one arc and gets ``f / D``.  Returns None when
    no flows are available.
    """
    if flows is None:
        return None
    if len(flows) != len(g.edges):
        raise ValueError("flow vector does not match the graph")
    y = [Fraction(0)] * instance.m
    for e, f in zip(g.edges, flows):
        if e.row is None:
            continue
        width = len(instance.constraints[e.row].terms)
        y[e.row] += Fraction(f, g.scale * (2 if width == 2 else 1))
    return DualCertificate(tuple(y))


def _fractional(x: Sequence[Fraction]) -> list:
    return [j for j, v in enumerate(x) if v.denominator != 1]


def maximal_integrality(instance: UtvpiInstance, x: Sequence[Fraction]) -> tuple:
    """Optimal point whose set of integral coordinates cannot be enlarged.

    Integral coordinates of ``x`` are fixed; then each fractional coordinate
    (ascending index) is tried at its floor and then its ceiling, keeping a
    fixation whenever the optimal value is unchanged.  Stops after a full
    pass without a successful fixation.
    """
    x = tuple(Fraction(v) for v in x)
    target = evaluate(instance, x)
    fixed = {j: int(v) for j, v in enumerate(x) if v.denominator == 1}

    def restricted(extra: dict) -> UtvpiInstance:
        rows = []
        for j, val in {**fixed, **extra}.items():
            rows.extend(fix_rows(j, val))
        return instance.with_rows(rows)

    check = solve_lo(instance)
    if (check.status is not Status.OPTIMAL or check.value != target
            or not is_feasible(instance, x)[0]):
        raise ValueError("input point is not an optimal relaxation solution")

    for _ in range(instance.n):
        progress = False
        for j in _fractional(x):
            if j in fixed:
                continue
            for cand in (x[j].numerator // x[j].denominator, -(-x[j].numerator // x[j].denominator)):
                sol = solve_lo(restricted({j: cand}))
                if sol.status is Status.OPTIMAL and sol.value == target:
                    x = sol.x
                    fixed.update({k: int(v) for k, v in enumerate(x) if v.denominator == 1})
                    progress = True
                    break
        if not progress:
            break
    return x
