"""Exact integer optimization via neighborhood persistency.

For any optimal relaxation point ``x*`` of a feasible UTVPI problem there is
an optimal integer point ``z`` with ``|z_j - x*_j| < 1``.  So integral
coordinates of ``x*`` are kept, every fractional one is rounded down to a base
value plus a binary offset, and the remaining binary problem is solved
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional, Sequence, Tuple

from . import binary
from .dcs import integer_feasible
from .model import Constraint, IlpSolution, Status, UtvpiInstance, is_feasible
from .relax import solve_lo


@dataclass(frozen=True)
class BinaryReduction:
    n: int
    base: Tuple[int, ...]
    free: Tuple[int, ...]
    weights: Tuple[Fraction, ...]
    rows: Tuple[Constraint, ...]  # over positions in ``free``
    value_offset: Fraction
    # rows whose variables are all integral in x*, split by outcome
    satisfied_rows: Tuple[int, ...] = ()
    conflict_rows: Tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.free)

    @property
    def immediately_infeasible(self) -> bool:
        return bool(self.conflict_rows)


def reduce_to_binary(instance: UtvpiInstance, x_star: Sequence) -> BinaryReduction:
    x_star = tuple(Fraction(v) for v in x_star)
    ok, violated = is_feasible(instance, x_star)
    if not ok:
        raise ValueError(f"relaxation point violates rows {violated}")
    base = tuple(floor(v) for v in x_star)
    free = tuple(j for j, v in enumerate(x_star) if v.denominator != 1)
    position = {j: i for i, j in enumerate(free)}
    rows, satisfied, conflicts = [], [], []
    for i, row in enumerate(instance.constraints):
        rhs = row.bound - sum(s * base[j] for j, s in row.terms)
        terms = tuple((position[j], s) for j, s in row.terms if j in position)
        if terms:
            rows.append(Constraint(terms, rhs))
        elif rhs <= 0:
            satisfied.append(i)
        else:
            conflicts.append(i)
    weights = tuple(instance.objective[j] for j in free)
    offset = sum((w * b for w, b in zip(instance.objective, base)), Fraction(0))
    return BinaryReduction(instance.n, base, free, weights, tuple(rows), offset,
                           tuple(satisfied), tuple(conflicts))


def lift(reduction: BinaryReduction, x_prime: Sequence[int]) -> Tuple[int, ...]:
    if len(x_prime) != reduction.size:
        raise ValueError(f"expected {reduction.size} binary values, got {len(x_prime)}")
    z = list(reduction.base)
    for j, v in zip(reduction.free, x_prime):
        z[j] += int(v)
    return tuple(z)


def solve_ilp(instance: UtvpiInstance) -> IlpSolution:
    lo = solve_lo(instance)
    if lo.status is Status.INFEASIBLE:
        return IlpSolution(Status.INFEASIBLE)
    if lo.status is Status.UNBOUNDED:
        # a rational polyhedron with an integer point and an unbounded LP
        # direction has an unbounded integer program as well
        status = Status.UNBOUNDED if integer_feasible(instance) else Status.INFEASIBLE
        return IlpSolution(status)
    red = reduce_to_binary(instance, lo.x)
    if red.immediately_infeasible:
        return IlpSolution(Status.INFEASIBLE, lo_point=lo.x)
    sol = binary.solve_exact(red)
    if sol.status is not Status.OPTIMAL:
        # a feasible integer program would have an optimum inside N(x*)
        return IlpSolution(Status.INFEASIBLE, lo_point=lo.x)
    z = lift(red, sol.x)
    return IlpSolution(Status.OPTIMAL, z, red.value_offset + sol.value, lo.x)


def _nonnegativity_rows_present(instance: UtvpiInstance) -> bool:
    lower = {}
    for row in instance.constraints:
        if len(row.terms) == 1 and row.terms[0][1] == 1:
            j = row.terms[0][0]
            lower[j] = max(lower.get(j, row.bound), row.bound)
    return all(lower.get(j, -1) >= 0 for j in range(instance.n))


def two_approx(instance: UtvpiInstance, assume_nonneg: bool = False) -> IlpSolution:
    """Integer point within factor two of the optimum (``w >= 0``, ``x >= 0``)."""
    if any(w < 0 for w in instance.objective):
        raise ValueError("two-approximation needs a non-negative objective")
    if not _nonnegativity_rows_present(instance):
        if not assume_nonneg:
            raise ValueError("every variable needs a row x_j >= c with c >= 0")
        instance = instance.with_rows([Constraint(((j, 1),), 0) for j in range(instance.n)])
    lo = solve_lo(instance)
    if lo.status is not Status.OPTIMAL:
        return IlpSolution(lo.status)
    red = reduce_to_binary(instance, lo.x)
    if red.immediately_infeasible:
        return IlpSolution(Status.INFEASIBLE, lo_point=lo.x)
    xp = binary.two_approx_binary(red)
    if xp is None:
        return IlpSolution(Status.INFEASIBLE, lo_point=lo.x)
    value = red.value_offset + sum((w * v for w, v in zip(red.weights, xp)), Fraction(0))
    return IlpSolution(Status.OPTIMAL, lift(red, xp), value, lo.x)


def decide(instance: UtvpiInstance, k) -> Tuple[Optional[Tuple[int, ...]], Optional[Tuple]]:
    """Integer point of value at most ``k`` (or None), plus the LO point used.

    Equivalent to asking the binary reduction for weight at most
    ``k - w . floor(x*)``.
    """
    k = Fraction(k)
    lo = solve_lo(instance)
    if lo.status is Status.INFEASIBLE:
        return None, None
    if lo.status is Status.UNBOUNDED:
        raise ValueError("relaxation is unbounded; the decision question is ill-posed")
    red = reduce_to_binary(instance, lo.x)
    if red.immediately_infeasible:
        return None, lo.x
    xp = binary.decide_at_most_k(red, k - red.value_offset)
    return (lift(red, xp) if xp is not None else None), lo.x
