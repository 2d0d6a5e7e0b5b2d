"""Core data types for integer optimization over UTVPI systems.

A UTVPI row has at most two variables, each with coefficient +1 or -1, and an
integer right-hand side.  Objective coefficients are exact rationals
(:class:`fractions.Fraction`); solution vectors are tuples of ``Fraction``
(relaxation points, always half-integral from the solver) or of ``int``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; refuses floats."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted, use Fraction")
    return Fraction(value)


def is_half_integral(value: Fraction) -> bool:
    return (2 * Fraction(value)).denominator == 1


def _check_length(vec: Sequence, n: int, what: str = "vector") -> None:
    if len(vec) != n:
        raise ValueError(f"{what} has length {len(vec)}, expected {n}")


@dataclass(frozen=True)
class Constraint:
    """One row ``sum(sign * x[var]) >= bound`` with one or two unit terms."""

    terms: Tuple[Tuple[int, int], ...]
    bound: int

    def __post_init__(self):
        terms = tuple((int(j), int(s)) for j, s in self.terms)
        object.__setattr__(self, "terms", terms)
        if isinstance(self.bound, Fraction) and self.bound.denominator != 1:
            raise ValueError(f"bound must be an integer, got {self.bound}")
        object.__setattr__(self, "bound", int(self.bound))
        if not 1 <= len(terms) <= 2:
            raise ValueError("a UTVPI row needs one or two terms")
        for j, s in terms:
            if s not in (1, -1):
                raise ValueError(f"coefficient {s} is not +1/-1")
            if j < 0:
                raise ValueError(f"negative variable index {j}")
        if len(terms) == 2 and terms[0][0] == terms[1][0]:
            raise ValueError(f"variable x{terms[0][0] + 1} appears twice in a row")

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(j for j, _ in self.terms)

    def lhs(self, x: Sequence) -> Fraction:
        return sum((s * x[j] for j, s in self.terms), Fraction(0))

    def slack(self, x: Sequence) -> Fraction:
        return self.lhs(x) - self.bound


@dataclass(frozen=True)
class UtvpiInstance:
    """``minimize objective . x  subject to  rows,  x integer``."""

    n: int
    constraints: Tuple[Constraint, ...]
    objective: Vector
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "objective", tuple(as_fraction(c) for c in self.objective))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            _check_length(self.names, self.n, "names")
        if self.n < 0:
            raise ValueError("variable count must be non-negative")
        _check_length(self.objective, self.n, "objective")
        for i, row in enumerate(self.constraints):
            for j in row.variables:
                if j >= self.n:
                    raise ValueError(f"row {i + 1} references x{j + 1} but n = {self.n}")

    @property
    def m(self) -> int:
        return len(self.constraints)

    def with_rows(self, rows: Sequence[Constraint]) -> "UtvpiInstance":
        return UtvpiInstance(self.n, self.constraints + tuple(rows), self.objective, self.names)

    def with_box(self, lo: int, hi: int) -> "UtvpiInstance":
        """Append ``lo <= x_j <= hi`` rows for every variable."""
        return self.with_rows(box_rows(self.n, lo, hi))

    def var_name(self, j: int) -> str:
        return self.names[j] if self.names else f"x{j + 1}"


def box_rows(n: int, lo: int, hi: int) -> list:
    rows = []
    for j in range(n):
        rows.append(Constraint(((j, 1),), lo))
        rows.append(Constraint(((j, -1),), -hi))
    return rows


def fix_rows(j: int, value: int) -> list:
    return [Constraint(((j, 1),), value), Constraint(((j, -1),), -value)]


@dataclass(frozen=True)
class DualCertificate:
    """Multipliers ``y >= 0`` with ``A^T y = w``, one per row."""

    y: Vector

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(as_fraction(v) for v in self.y))


@dataclass(frozen=True)
class LpSolution:
    status: Status
    x: Optional[Vector] = None
    value: Optional[Fraction] = None
    certificate: Optional[DualCertificate] = None


@dataclass(frozen=True)
class IlpSolution:
    status: Status
    z: Optional[Tuple[int, ...]] = None
    value: Optional[Fraction] = None
    # relaxation optimum the integer point was derived from, when there is one
    lo_point: Optional[Vector] = None


def evaluate(instance: UtvpiInstance, x: Sequence) -> Fraction:
    _check_length(x, instance.n, "point")
    return sum((w * Fraction(v) for w, v in zip(instance.objective, x)), Fraction(0))


def is_feasible(instance: UtvpiInstance, x: Sequence) -> Tuple[bool, list]:
    """Return ``(ok, violated_row_indices)`` for a real or integer point."""
    _check_length(x, instance.n, "point")
    violated = [i for i, row in enumerate(instance.constraints) if row.lhs(x) < row.bound]
    return not violated, violated


def in_integer_neighborhood(x: Sequence, z: Sequence[int]) -> bool:
    """True iff ``|z_j - x_j| < 1`` for every coordinate."""
    _check_length(z, len(x), "integer point")
    return all(abs(Fraction(zj) - Fraction(xj)) < 1 for xj, zj in zip(x, z))


def verify_dual_certificate(instance: UtvpiInstance, x: Sequence, cert: DualCertificate) -> bool:
    """Check nonnegativity, ``A^T y = w`` and complementary slackness at ``x``.

    A ``True`` answer proves that ``x`` (assumed feasible) is optimal for the
    relaxation, since then ``w.x = b.y`` by weak duality.
    """
    _check_length(x, instance.n, "point")
    _check_length(cert.y, instance.m, "certificate")
    if any(v < 0 for v in cert.y):
        return False
    aty = [Fraction(0)] * instance.n
    for yi, row in zip(cert.y, instance.constraints):
        for j, s in row.terms:
            aty[j] += s * yi
    if tuple(aty) != instance.objective:
        return False
    return all(yi == 0 or row.slack(x) == 0 for yi, row in zip(cert.y, instance.constraints))
