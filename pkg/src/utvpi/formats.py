"""Line-oriented instance format and solution writers.

Example::

    # comments run to end of line
    vars 3
    min 3*x1 + 1*x2
    c: +x1 +x2 +x3 >= 2
    c: +x1 -x3 >= 0
    c: -x2 >= -1
    box x1 0 2

Row coefficients other than +-1, or rows with three or more terms, make the
instance *extended*; it then parses to :class:`ExtendedInstance`, which only
the brute-force oracle accepts.  In a UTVPI file every ``box`` line is
compiled into the two rows ``+x_i >= lo`` and ``-x_i >= -hi``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .model import Constraint, IlpSolution, LpSolution, Status, UtvpiInstance


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ExtendedInstance:
    """Rows with arbitrary integer coefficients; terms are ``(coef, var)``."""

    n: int
    rows: Tuple[Tuple[Tuple[int, int], ...], ...]
    bounds: Tuple[int, ...]
    objective: Tuple[Fraction, ...]
    # per-variable (lo, hi) from ``box`` lines; None where a variable has none
    box: Optional[Tuple[Optional[Tuple[int, int]], ...]] = None

    @property
    def m(self) -> int:
        return len(self.rows)


Instance = Union[UtvpiInstance, ExtendedInstance]

_TERM = re.compile(r"(?:(?P<num>\d+)(?:/(?P<den>\d+))?\s*\*\s*)?x(?P<idx>\d+)")
_INT = re.compile(r"[+-]?\d+$")


def _parse_expr(text: str, line: int, offset: int, rational: bool) -> List[Tuple[Fraction, int, int]]:
    """Parse ``[sign] [k*]x<i> (sign [k*]x<i>)*`` into (coef, index, column)."""
    terms = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        col = offset + pos + 1
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            while pos < len(text) and text[pos].isspace():
                pos += 1
        elif terms:
            raise ParseError("expected '+' or '-' between terms", line, col)
        match = _TERM.match(text, pos)
        if not match:
            raise ParseError(f"expected a term like '2*x1', got {text[pos:pos + 8]!r}", line,
                             offset + pos + 1)
        if match.group("den") is not None and not rational:
            raise ParseError("row coefficients must be integers", line, offset + pos + 1)
        num = int(match.group("num")) if match.group("num") is not None else 1
        den = int(match.group("den")) if match.group("den") is not None else 1
        if den == 0:
            raise ParseError("zero denominator", line, offset + pos + 1)
        idx = int(match.group("idx"))
        terms.append((sign * Fraction(num, den), idx, offset + pos + 1))
        pos = match.end()
    return terms


def _var(idx: int, n: int, line: int, col: int) -> int:
    if not 1 <= idx <= n:
        raise ParseError(f"variable x{idx} out of range 1..{n}", line, col)
    return idx - 1


def _int(token: str, line: int, col: int, what: str) -> int:
    if not _INT.match(token):
        raise ParseError(f"{what} must be an integer, got {token!r}", line, col)
    return int(token)


def parse_instance(text: str) -> Instance:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, body))
    if not lines:
        raise ParseError("empty instance", 1)

    lineno, body = lines[0]
    head = body.split()
    if len(head) != 2 or head[0] != "vars":
        raise ParseError("first line must be 'vars <n>'", lineno)
    n = _int(head[1], lineno, body.index(head[1]) + 1, "variable count")
    if n < 1:
        raise ParseError("variable count must be positive", lineno)

    if len(lines) < 2:
        raise ParseError("missing 'min' objective line", lineno + 1)
    lineno, body = lines[1]
    stripped = body.lstrip()
    if not stripped.startswith("min") or (len(stripped) > 3 and not stripped[3].isspace()):
        raise ParseError("second line must start with 'min'", lineno)
    start = len(body) - len(stripped) + 3
    objective = [Fraction(0)] * n
    expr = body[start:]
    if expr.strip() not in ("", "0"):
        seen = set()
        for coef, idx, col in _parse_expr(expr, lineno, start, rational=True):
            j = _var(idx, n, lineno, col)
            if j in seen:
                raise ParseError(f"x{idx} repeated in objective", lineno, col)
            seen.add(j)
            objective[j] = coef

    rows: List[Tuple[Tuple[int, int], ...]] = []
    bounds: List[int] = []
    box: Dict[int, Tuple[int, int]] = {}
    for lineno, body in lines[2:]:
        tokens = body.split()
        if tokens[0] == "box":
            if len(tokens) != 4 or not tokens[1].startswith("x"):
                raise ParseError("expected 'box x<i> <lo> <hi>'", lineno)
            j = _var(_int(tokens[1][1:], lineno, body.index(tokens[1]) + 2, "index"), n, lineno,
                     body.index(tokens[1]) + 1)
            lo = _int(tokens[2], lineno, 1, "box bound")
            hi = _int(tokens[3], lineno, 1, "box bound")
            if lo > hi:
                raise ParseError(f"empty box [{lo}, {hi}]", lineno)
            box[j] = (lo, hi)
            continue
        label = re.match(r"\s*[A-Za-z_]\w*\s*:", body)
        if not label:
            raise ParseError("expected a row '<label>: <terms> >= <b>' or a box line", lineno)
        rest_start = label.end()
        if body.count(">=") != 1:
            raise ParseError("row needs exactly one '>='", lineno, rest_start + 1)
        ge = body.index(">=")
        rhs = body[ge + 2:].strip()
        b = _int(rhs, lineno, ge + 3, "right-hand side")
        terms = _parse_expr(body[rest_start:ge], lineno, rest_start, rational=False)
        if not terms:
            raise ParseError("row has no terms", lineno, rest_start + 1)
        seen = set()
        row = []
        for coef, idx, col in terms:
            j = _var(idx, n, lineno, col)
            if j in seen:
                raise ParseError(f"duplicate variable x{idx} in row", lineno, col)
            if coef == 0:
                raise ParseError("zero coefficient", lineno, col)
            seen.add(j)
            row.append((int(coef), j))
        rows.append(tuple(row))
        bounds.append(b)

    utvpi = all(len(r) <= 2 and all(abs(c) == 1 for c, _ in r) for r in rows)
    if not utvpi:
        box_tuple = tuple(box.get(j) for j in range(n)) if box else None
        return ExtendedInstance(n, tuple(rows), tuple(bounds), tuple(objective), box_tuple)

    constraints = [Constraint(tuple((j, c) for c, j in r), b) for r, b in zip(rows, bounds)]
    for j in sorted(box):
        lo, hi = box[j]
        constraints.append(Constraint(((j, 1),), lo))
        constraints.append(Constraint(((j, -1),), -hi))
    return UtvpiInstance(n, tuple(constraints), tuple(objective))


def _coef_term(coef: Fraction, j: int, first: bool) -> str:
    sign = "-" if coef < 0 else "+"
    body = f"{abs(coef)}*x{j + 1}"
    if first:
        return body if coef >= 0 else f"-{body}"
    return f"{sign} {body}"


def _objective_line(objective: Sequence[Fraction]) -> str:
    parts = []
    for j, c in enumerate(objective):
        if c != 0:
            parts.append(_coef_term(c, j, not parts))
    return "min " + (" ".join(parts) if parts else "0")


def _row_text(terms: Sequence[Tuple[int, int]], bound: int) -> str:
    """``terms`` as (coef, var)."""
    out = []
    for coef, j in terms:
        sign = "-" if coef < 0 else "+"
        out.append(f"{sign}x{j + 1}" if abs(coef) == 1 else f"{sign}{abs(coef)}*x{j + 1}")
    return "c: " + " ".join(out) + f" >= {bound}"


def write_instance(instance: Instance) -> str:
    lines = [f"vars {instance.n}", _objective_line(instance.objective)]
    if isinstance(instance, UtvpiInstance):
        for row in instance.constraints:
            lines.append(_row_text([(s, j) for j, s in row.terms], row.bound))
    else:
        for terms, b in zip(instance.rows, instance.bounds):
            lines.append(_row_text(terms, b))
        if instance.box:
            for j, bounds in enumerate(instance.box):
                if bounds is not None:
                    lines.append(f"box x{j + 1} {bounds[0]} {bounds[1]}")
    return "\n".join(lines) + "\n"


def _names(n: int, names: Optional[Sequence[str]]) -> List[str]:
    return list(names) if names else [f"x{j + 1}" for j in range(n)]


def solution_dict(solution, names: Optional[Sequence[str]] = None) -> dict:
    """JSON-ready mirror of the text output; numbers as exact strings."""
    out: dict = {"status": solution.status.value}
    if solution.status is not Status.OPTIMAL:
        return out
    point = solution.z if isinstance(solution, IlpSolution) else solution.x
    labels = _names(len(point), names)
    out["x"] = {name: str(v) for name, v in zip(labels, point)}
    out["value"] = str(solution.value)
    if isinstance(solution, IlpSolution) and solution.lo_point is not None:
        out["relaxed"] = {name: str(v) for name, v in zip(labels, solution.lo_point)}
    if isinstance(solution, LpSolution) and solution.certificate is not None:
        out["dual"] = {f"y{i + 1}": str(v) for i, v in enumerate(solution.certificate.y)}
    return out


def write_solution(solution, fmt: str = "text", names: Optional[Sequence[str]] = None) -> str:
    data = solution_dict(solution, names)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"status {data['status']}"]
    if "x" in data:
        lines += [f"{k} = {v}" for k, v in data["x"].items()]
        lines.append(f"value = {data['value']}")
        lines += [f"relaxed {k} = {v}" for k, v in data.get("relaxed", {}).items()]
        lines += [f"dual {k} = {v}" for k, v in data.get("dual", {}).items()]
    return "\n".join(lines) + "\n"
