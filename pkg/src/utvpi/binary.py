"""Binary UTVPI optimization (weighted min-ones 2-SAT and friends).

A binary problem here is ``minimize weights . x'`` over ``x' in {0,1}^k``
subject to UTVPI rows.  :class:`~utvpi.persistency.BinaryReduction` is the
usual carrier, but anything with ``size``, ``rows`` and ``weights`` works.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .model import Constraint, Status, UtvpiInstance, box_rows
from .relax import solve_lo

Literal = Tuple[int, bool]  # (variable, polarity); (j, True) reads "x_j is true"


@dataclass(frozen=True)
class BinaryResult:
    status: Status
    x: Optional[Tuple[int, ...]] = None
    value: Optional[Fraction] = None


@dataclass(frozen=True)
class TwoSatFormula:
    num_vars: int
    clauses: Tuple[Tuple[Literal, ...], ...] = ()
    has_empty_clause: bool = field(init=False, default=False)

    def __post_init__(self):
        clauses = tuple(tuple((int(j), bool(p)) for j, p in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for c in clauses:
            if len(c) > 2:
                raise ValueError("2-SAT clauses hold at most two literals")
            for j, _ in c:
                if not 0 <= j < self.num_vars:
                    raise ValueError(f"literal variable {j} out of range")
        object.__setattr__(self, "has_empty_clause", any(len(c) == 0 for c in clauses))


@dataclass(frozen=True)
class TwoSatResult:
    assignment: Optional[Tuple[bool, ...]]
    # variable whose two literals share a strongly connected component
    conflict: Optional[int] = None

    @property
    def satisfiable(self) -> bool:
        return self.assignment is not None


def two_sat_solve(f: TwoSatFormula) -> TwoSatResult:
    """Implication graph + Tarjan SCC; iterative to avoid recursion limits."""
    if f.has_empty_clause:
        return TwoSatResult(None)
    n = f.num_vars

    def node(lit: Literal) -> int:
        return 2 * lit[0] + (0 if lit[1] else 1)

    adj: List[List[int]] = [[] for _ in range(2 * n)]
    for clause in f.clauses:
        if len(clause) == 1:
            a = node(clause[0])
            adj[a ^ 1].append(a)
        else:
            a, b = node(clause[0]), node(clause[1])
            adj[a ^ 1].append(b)
            adj[b ^ 1].append(a)

    index = [-1] * (2 * n)
    low = [0] * (2 * n)
    comp = [-1] * (2 * n)
    on_stack = [False] * (2 * n)
    stack: List[int] = []
    counter = 0
    ncomp = 0
    for root in range(2 * n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1

    assignment = []
    for j in range(n):
        if comp[2 * j] == comp[2 * j + 1]:
            return TwoSatResult(None, conflict=j)
        # Tarjan numbers components in reverse topological order
        assignment.append(comp[2 * j] < comp[2 * j + 1])
    return TwoSatResult(tuple(assignment))


# -- branch and bound ----------------------------------------------------------


def _propagate(rows: Sequence[Constraint], vals: List[Optional[int]]) -> bool:
    """Unit propagation in place; returns False on a conflict."""
    changed = True
    while changed:
        changed = False
        for row in rows:
            best = 0
            free = []
            for j, s in row.terms:
                if vals[j] is None:
                    best += max(s, 0)
                    free.append((j, s))
                else:
                    best += s * vals[j]
            slack = best - row.bound
            if slack < 0:
                return False
            if slack == 0:
                for j, s in free:
                    vals[j] = 1 if s > 0 else 0
                    changed = True
    return True


def _weights(problem) -> Tuple[Fraction, ...]:
    return tuple(Fraction(w) for w in problem.weights)


def solve_exact(problem) -> BinaryResult:
    """Exact optimum; the lexicographically smallest optimal ``x'`` wins ties."""
    k = problem.size
    rows = list(problem.rows)
    w = _weights(problem)
    best: List = [None, None]

    def search(vals: List[Optional[int]]) -> None:
        if not _propagate(rows, vals):
            return
        cost = sum((w[j] for j in range(k) if vals[j] == 1), Fraction(0))
        bound = cost + sum((min(w[j], 0) for j in range(k) if vals[j] is None), Fraction(0))
        if best[1] is not None and bound >= best[1]:
            return
        free = next((j for j in range(k) if vals[j] is None), None)
        if free is None:
            best[0], best[1] = tuple(vals), cost
            return
        for value in (0, 1):
            child = list(vals)
            child[free] = value
            search(child)

    search([None] * k)
    if best[0] is None:
        return BinaryResult(Status.INFEASIBLE)
    return BinaryResult(Status.OPTIMAL, best[0], best[1])


def _require_nonnegative(w: Sequence[Fraction]) -> None:
    if any(v < 0 for v in w):
        raise ValueError("objective must be non-negative")


def decide_at_most_k(problem, k) -> Optional[Tuple[int, ...]]:
    """A feasible ``x'`` of weight at most ``k``, or None if none exists.

    Depth-bounded search: branch on the lowest-index free variable of the
    first row that the all-zero completion violates, trying 1 before 0.
    """
    k = Fraction(k)
    size = problem.size
    rows = list(problem.rows)
    w = _weights(problem)
    _require_nonnegative(w)

    def search(vals: List[Optional[int]]) -> Optional[Tuple[int, ...]]:
        if not _propagate(rows, vals):
            return None
        if sum((w[j] for j in range(size) if vals[j] == 1), Fraction(0)) > k:
            return None
        for row in rows:
            if sum(s * (vals[j] or 0) for j, s in row.terms) < row.bound:
                j = min(j for j, _ in row.terms if vals[j] is None)
                for value in (1, 0):
                    child = list(vals)
                    child[j] = value
                    found = search(child)
                    if found is not None:
                        return found
                return None
        return tuple(v or 0 for v in vals)

    return search([None] * size)


def relaxation_instance(problem) -> UtvpiInstance:
    """The problem as a UTVPI instance with ``0 <= x' <= 1`` rows appended."""
    return UtvpiInstance(problem.size, tuple(problem.rows) + tuple(box_rows(problem.size, 0, 1)),
                         _weights(problem))


def two_approx_binary(problem) -> Optional[Tuple[int, ...]]:
    """Feasible ``x'`` with weight at most twice the optimum, or None.

    Solves the half-integral relaxation, keeps its 0/1 coordinates and
    completes the 1/2 coordinates by any 2-SAT solution of the rows they
    still have to satisfy.  Each completed coordinate costs at most twice
    what the relaxation paid for it.
    """
    w = _weights(problem)
    _require_nonnegative(w)
    lo = solve_lo(relaxation_instance(problem))
    if lo.status is not Status.OPTIMAL:
        return None
    x = lo.x
    half = [j for j, v in enumerate(x) if v.denominator != 1]
    local = {j: i for i, j in enumerate(half)}
    clauses = []
    for row in problem.rows:
        fixed = sum(s * x[j] for j, s in row.terms if j not in local)
        open_terms = [(j, s) for j, s in row.terms if j in local]
        if not open_terms:
            continue
        for values in itertools.product((0, 1), repeat=len(open_terms)):
            if fixed + sum(s * v for (_, s), v in zip(open_terms, values)) < row.bound:
                # forbid this combination
                clauses.append(tuple((local[j], v == 0) for (j, _), v in zip(open_terms, values)))
    sat = two_sat_solve(TwoSatFormula(len(half), tuple(clauses)))
    if not sat.satisfiable:
        return None
    return tuple(int(sat.assignment[local[j]]) if j in local else int(v) for j, v in enumerate(x))
