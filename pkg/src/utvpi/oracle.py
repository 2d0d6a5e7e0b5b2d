"""Brute-force ground truth over finite boxes, plus the non-UTVPI fixtures.

Everything here enumerates grids with numpy and shares no code with the
flow-based solver, so the two can check each other.  The box is always
treated as extra constraints: results are optima of ``instance ∩ box``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .formats import ExtendedInstance, Instance, parse_instance
from .model import Constraint, IlpSolution, Status, UtvpiInstance

DEFAULT_CAP = 10 ** 7

Box = Union[Tuple[int, int], Sequence[Tuple[int, int]]]


class BoxTooLarge(ValueError):
    pass


def _box(instance: Instance, box: Optional[Box]) -> List[Tuple[int, int]]:
    n = instance.n
    if box is None:
        per_var = [None] * n
    elif len(box) == 2 and all(isinstance(v, (int, np.integer)) for v in box):
        per_var = [tuple(box)] * n
    else:
        per_var = [tuple(b) for b in box]
        if len(per_var) != n:
            raise ValueError(f"box has {len(per_var)} entries, expected {n}")
    own = getattr(instance, "box", None) or _unary_bounds(instance)
    out = []
    for j in range(n):
        given = per_var[j]
        inner = own[j]
        if given is None and inner is None:
            raise ValueError(f"no finite box for x{j + 1}")
        if given is None:
            out.append(inner)
        elif inner is None:
            out.append(given)
        else:
            out.append((max(given[0], inner[0]), min(given[1], inner[1])))
    return out


def _unary_bounds(instance: Instance) -> List[Optional[Tuple[int, int]]]:
    """Box implied by rows ``+x_j >= lo`` and ``-x_j >= -hi``, where both exist."""
    lower: dict = {}
    upper: dict = {}
    a, b = _rows(instance)
    for row, rhs in zip(a, b):
        nz = np.flatnonzero(row)
        if len(nz) != 1 or abs(row[nz[0]]) != 1:
            continue
        j = int(nz[0])
        if row[j] > 0:
            lower[j] = max(lower.get(j, int(rhs)), int(rhs))
        else:
            upper[j] = min(upper.get(j, -int(rhs)), -int(rhs))
    return [(lower[j], upper[j]) if j in lower and j in upper else None
            for j in range(instance.n)]


def _rows(instance: Instance) -> Tuple[np.ndarray, np.ndarray]:
    n = instance.n
    if isinstance(instance, UtvpiInstance):
        terms = [[(s, j) for j, s in row.terms] for row in instance.constraints]
        bounds = [row.bound for row in instance.constraints]
    else:
        terms = list(instance.rows)
        bounds = list(instance.bounds)
    a = np.zeros((len(terms), n), dtype=np.int64)
    for i, row in enumerate(terms):
        for c, j in row:
            a[i, j] += c
    return a, np.array(bounds, dtype=np.int64)


def _integer_objective(objective: Sequence[Fraction]) -> Tuple[np.ndarray, int]:
    scale = lcm(*(Fraction(w).denominator for w in objective)) if objective else 1
    return np.array([int(Fraction(w) * scale) for w in objective], dtype=np.int64), scale


@dataclass
class GridOptimum:
    """Minimum over ``box ∩ (1/step) Z^n``.

    ``points`` holds every optimal grid point, scaled by ``step`` and in
    lexicographic order; ``exact`` says whether the grid provably contains a
    relaxation optimum (true for UTVPI rows on the half grid).
    """

    status: Status
    step: int
    value: Optional[Fraction] = None
    points: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), dtype=np.int64))
    exact: bool = True
    box: Tuple[Tuple[int, int], ...] = ()

    @property
    def point(self) -> Optional[Tuple[Fraction, ...]]:
        if self.status is not Status.OPTIMAL:
            return None
        return tuple(Fraction(int(v), self.step) for v in self.points[0])

    def optima(self) -> List[Tuple[Fraction, ...]]:
        return [tuple(Fraction(int(v), self.step) for v in p) for p in self.points]


def enumerate_grid(instance: Instance, box: Optional[Box] = None, step: int = 1,
                   cap: int = DEFAULT_CAP) -> GridOptimum:
    bounds = _box(instance, box)
    axes = [np.arange(step * lo, step * hi + 1, dtype=np.int64) for lo, hi in bounds]
    volume = 1
    for ax in axes:
        volume *= len(ax)
    if volume > cap:
        raise BoxTooLarge(f"grid has {volume} points, cap is {cap}")
    if volume == 0:
        return GridOptimum(Status.INFEASIBLE, step, box=tuple(bounds))
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, instance.n)
    a, b = _rows(instance)
    ok = np.ones(len(grid), dtype=bool)
    for row, rhs in zip(a, b):
        ok &= grid @ row >= step * rhs
    feasible = grid[ok]
    if len(feasible) == 0:
        return GridOptimum(Status.INFEASIBLE, step, box=tuple(bounds))
    w, scale = _integer_objective(instance.objective)
    scores = feasible @ w
    best = scores.min()
    return GridOptimum(Status.OPTIMAL, step, Fraction(int(best), step * scale),
                       feasible[scores == best], box=tuple(bounds))


def brute_ilp(instance: Instance, box: Optional[Box] = None, cap: int = DEFAULT_CAP) -> IlpSolution:
    """Integer optimum in the box; lexicographically smallest among ties."""
    res = enumerate_grid(instance, box, 1, cap)
    if res.status is not Status.OPTIMAL:
        return IlpSolution(Status.INFEASIBLE)
    return IlpSolution(Status.OPTIMAL, tuple(int(v) for v in res.points[0]), res.value)


def brute_lo_halfgrid(instance: Instance, box: Optional[Box] = None,
                      cap: int = DEFAULT_CAP) -> GridOptimum:
    """Relaxation optimum over the half grid (quarter grid for extended rows).

    For UTVPI rows this is exact: a bounded UTVPI polyhedron has
    half-integral vertices.  For extended rows it is only a heuristic, and
    the result says so via ``exact=False``.
    """
    if isinstance(instance, ExtendedInstance):
        res = enumerate_grid(instance, box, 4, cap)
        res.exact = False
        return res
    return enumerate_grid(instance, box, 2, cap)


@dataclass
class PersistencyReport:
    status: Status  # of the integer problem inside the box
    ilo_value: Optional[Fraction] = None
    lo_value: Optional[Fraction] = None
    lo_optima: int = 0
    violations: List[Tuple[Fraction, ...]] = field(default_factory=list)
    exact: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


def _optimal_mask(res: GridOptimum) -> np.ndarray:
    shape = tuple(hi - lo + 1 for lo, hi in res.box)
    mask = np.zeros(shape, dtype=bool)
    if res.status is Status.OPTIMAL:
        offsets = np.array([lo for lo, _ in res.box], dtype=np.int64)
        mask[tuple((res.points - offsets).T)] = True
    return mask


def check_neighborhood_persistency(instance: Instance, box: Optional[Box] = None,
                                   cap: int = DEFAULT_CAP) -> PersistencyReport:
    """Every grid relaxation optimum must have an integer optimum in ``N(x*)``."""
    ilo = enumerate_grid(instance, box, 1, cap)
    lo = brute_lo_halfgrid(instance, box, cap)
    report = PersistencyReport(ilo.status, ilo.value, lo.value, len(lo.points), exact=lo.exact)
    if ilo.status is not Status.OPTIMAL:
        return report
    mask = _optimal_mask(ilo)
    offsets = np.array([b[0] for b in ilo.box], dtype=np.int64)
    pts = lo.points
    down = np.floor_divide(pts, lo.step)
    frac = (pts % lo.step != 0).astype(np.int64)
    found = np.zeros(len(pts), dtype=bool)
    # N(x) = {floor(x_j), ceil(x_j)} per coordinate; try every combination
    for pattern in itertools.product((0, 1), repeat=instance.n):
        z = down + frac * np.array(pattern, dtype=np.int64) - offsets
        inside = np.all((z >= 0) & (z < np.array(mask.shape)), axis=1)
        hit = np.zeros(len(pts), dtype=bool)
        hit[inside] = mask[tuple(z[inside].T)]
        found |= hit
    for p in pts[~found]:
        report.violations.append(tuple(Fraction(int(v), lo.step) for v in p))
    return report


# -- random instances ------------------------------------------------------------

ROW_FORMS = ((1, 1), (1, -1), (-1, -1), (1,), (-1,))


def random_instance(rng: random.Random, n_range=(2, 5), m_range=(1, 10), b_range=(-4, 4),
                    w_range=(-3, 3), box=(-3, 3)) -> UtvpiInstance:
    """Random UTVPI instance with the box appended as rows."""
    n = rng.randint(*n_range)
    m = rng.randint(*m_range)
    rows = []
    for _ in range(m):
        form = rng.choice(ROW_FORMS)
        vars_ = rng.sample(range(n), len(form))
        rows.append(Constraint(tuple(zip(vars_, form)), rng.randint(*b_range)))
    w = [rng.randint(*w_range) for _ in range(n)]
    return UtvpiInstance(n, tuple(rows), tuple(w)).with_box(*box)


# -- fixtures ----------------------------------------------------------------------

FIXTURE_TEXT = {
    "example1.ext": """\
# three-variable row breaks persistency
vars 3
min 3*x1 + 1*x2
c: +x1 +x2 +x3 >= 2
c: +x1 -x3 >= 0
c: -x2 >= -1
box x1 0 2
box x2 0 2
box x3 0 2
""",
    "example1_fixed.ext": """\
# example1 with x2 fixed to its relaxation value 1
vars 3
min 3*x1 + 1*x2
c: +x1 +x2 +x3 >= 2
c: +x1 -x3 >= 0
c: -x2 >= -1
c: +x2 >= 1
box x1 0 2
box x2 0 2
box x3 0 2
""",
    "example2.ext": """\
# coefficient 2 breaks persistency
vars 2
min 3*x1 + 1*x2
c: +2*x1 +x2 >= 2
c: -x2 >= -1
box x1 0 2
box x2 0 2
""",
    "example2_fixed.ext": """\
# example2 with x2 fixed to its relaxation value 1
vars 2
min 3*x1 + 1*x2
c: +2*x1 +x2 >= 2
c: -x2 >= -1
c: +x2 >= 1
box x1 0 2
box x2 0 2
""",
    "forced_half.utvpi": """\
# relaxation feasible only at (1/2, 1/2); no integer point
vars 2
min 1*x1 + 1*x2
c: +x1 +x2 >= 1
c: -x1 -x2 >= -1
c: +x1 -x2 >= 0
c: -x1 +x2 >= 0
""",
}

EXPECTED = {
    "example1": {"ilo_opt": 3, "ilo_point": [1, 0, 1], "fixed_opt": 4,
                 "lo_point": ["1/2", "1", "1/2"], "lo_opt": "5/2"},
    "example2": {"ilo_opt": 3, "ilo_point": [1, 0], "fixed_opt": 4, "fixed_point": [1, 1],
                 "lo_point": ["1/2", "1"], "lo_opt": "5/2"},
    "forced_half": {"lo_point": ["1/2", "1/2"], "lo_opt": "1", "integer_feasible": False},
}


def fixtures() -> dict:
    """Parsed fixture instances keyed by file stem, plus ``expected`` values."""
    out = {name.split(".")[0]: parse_instance(text) for name, text in FIXTURE_TEXT.items()}
    out["expected"] = EXPECTED
    return out
