"""L-convexity on the half-integer lattice, checked by enumeration.

Midpoints of half-integral vectors are quarter-integral.  ``floor_q`` rounds a
non-half-integral quarter value away from the nearest integer and ``ceil_q``
rounds it towards it; both fix half-integers.  A function ``g`` is L-convex
when ``g(x) + g(y) >= g(floor_q((x+y)/2)) + g(ceil_q((x+y)/2))`` for all
half-integral ``x, y``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .model import Status, UtvpiInstance, is_half_integral
from .oracle import DEFAULT_CAP, Box, PersistencyReport, brute_lo_halfgrid, enumerate_grid


class _Infinity:
    """The value +inf of an extended-real function; absorbs additions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "INF"


INF = _Infinity()


def _quarter(x) -> Fraction:
    x = Fraction(x)
    if (4 * x).denominator != 1:
        raise ValueError(f"{x} is not a multiple of 1/4")
    return x


def floor_q(x) -> Fraction:
    x = _quarter(x)
    if (2 * x).denominator == 1:
        return x
    if (x - Fraction(1, 4)).denominator == 1:
        return x + Fraction(1, 4)
    return x - Fraction(1, 4)


def ceil_q(x) -> Fraction:
    x = _quarter(x)
    if (2 * x).denominator == 1:
        return x
    if (x - Fraction(1, 4)).denominator == 1:
        return x - Fraction(1, 4)
    return x + Fraction(1, 4)


# -- function families -----------------------------------------------------------


@dataclass(frozen=True)
class Linear:
    weights: Tuple[Fraction, ...]

    def __call__(self, x):
        return sum((Fraction(w) * v for w, v in zip(self.weights, x)), Fraction(0))


@dataclass(frozen=True)
class Indicator:
    """0 where ``sum(coef * x[var]) >= bound`` holds, INF elsewhere.

    Coefficients are arbitrary integers so non-UTVPI rows can be probed too.
    """

    terms: Tuple[Tuple[int, int], ...]  # (coef, var)
    bound: int

    def __call__(self, x):
        lhs = sum(c * x[j] for c, j in self.terms)
        return Fraction(0) if lhs >= self.bound else INF


@dataclass(frozen=True)
class Sum:
    parts: Tuple

    def __call__(self, x):
        total = Fraction(0)
        for part in self.parts:
            total = total + part(x)
        return total


def instance_function(instance: UtvpiInstance) -> Sum:
    """Objective plus the indicator of every row."""
    parts = [Linear(instance.objective)]
    parts += [Indicator(tuple((s, j) for j, s in row.terms), row.bound) for row in instance.constraints]
    return Sum(tuple(parts))


def midpoint_check(g, x: Sequence, y: Sequence) -> bool:
    if len(x) != len(y):
        raise ValueError("points differ in length")
    mid = [(Fraction(a) + Fraction(b)) / 2 for a, b in zip(x, y)]
    lo = tuple(floor_q(v) for v in mid)
    hi = tuple(ceil_q(v) for v in mid)
    return g(x) + g(y) >= g(lo) + g(hi)


def half_grid(n: int, lo: int, hi: int) -> Iterator[Tuple[Fraction, ...]]:
    axis = [Fraction(k, 2) for k in range(2 * lo, 2 * hi + 1)]
    return itertools.product(axis, repeat=n)


def midpoint_sweep(g, n: int, lo: int, hi: int) -> Optional[Tuple[tuple, tuple]]:
    """First pair of half-grid points in ``[lo, hi]^n`` violating the inequality."""
    points = list(half_grid(n, lo, hi))
    values = [g(p) for p in points]
    for i, x in enumerate(points):
        for k in range(i, len(points)):
            y = points[k]
            mid = [(a + b) / 2 for a, b in zip(x, y)]
            rhs = g(tuple(floor_q(v) for v in mid)) + g(tuple(ceil_q(v) for v in mid))
            if not values[i] + values[k] >= rhs:
                return x, y
    return None


def half_neighborhood(x: Sequence) -> List[Tuple[int, ...]]:
    """Integer vectors within 1/2 of ``x`` in every coordinate."""
    choices = []
    for v in x:
        v = Fraction(v)
        choices.append(sorted({z for z in (v.numerator // v.denominator,
                                            -(-v.numerator // v.denominator))
                               if abs(z - v) <= Fraction(1, 2)}))
    return list(itertools.product(*choices))


def check_half_persistency(instance: UtvpiInstance, box: Optional[Box] = None,
                           cap: int = DEFAULT_CAP) -> PersistencyReport:
    """Each half-integral relaxation optimum has an integer optimum in N_1/2.

    Extended instances are enumerated on the quarter grid; only the
    half-integral optima among those are checked.
    """
    ilo = enumerate_grid(instance, box, 1, cap)
    lo = brute_lo_halfgrid(instance, box, cap)
    candidates = [x for x in lo.optima() if all(is_half_integral(v) for v in x)]
    report = PersistencyReport(ilo.status, ilo.value, lo.value, len(candidates), exact=lo.exact)
    if ilo.status is not Status.OPTIMAL:
        return report
    optimal = {tuple(int(v) for v in p) for p in ilo.points}
    for x in candidates:
        if not any(z in optimal for z in half_neighborhood(x)):
            report.violations.append(x)
    return report
