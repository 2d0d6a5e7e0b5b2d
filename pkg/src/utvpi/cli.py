"""Command-line interface.

Exit codes: 0 success, 1 infeasible (or "no"), 2 unbounded, 3 input error,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import dcs, oracle
from .formats import ExtendedInstance, ParseError, parse_instance, write_solution
from .lconvex import Indicator, Linear, check_half_persistency, midpoint_sweep
from .model import LpSolution, Status, UtvpiInstance
from .oracle import ROW_FORMS, BoxTooLarge
from .persistency import decide, solve_ilp, two_approx
from .relax import maximal_integrality, solve_lo

EXIT_OK, EXIT_INFEASIBLE, EXIT_UNBOUNDED, EXIT_INPUT, EXIT_INTERNAL = range(5)

_STATUS_EXIT = {Status.OPTIMAL: EXIT_OK, Status.INFEASIBLE: EXIT_INFEASIBLE,
                Status.UNBOUNDED: EXIT_UNBOUNDED}


class InputError(Exception):
    pass


class InvariantViolation(Exception):
    pass


def _fmt_point(x) -> str:
    return "(" + ", ".join(str(v) for v in x) + ")"


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_instance(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_utvpi(path: str) -> UtvpiInstance:
    inst = _load(path)
    if isinstance(inst, ExtendedInstance):
        raise InputError(f"{path}: rows are not UTVPI; only 'oracle' and 'check' accept them")
    return inst


def _box(args) -> Optional[tuple]:
    return tuple(args.box) if args.box else None


def _emit(out, data: dict, text_lines: List[str], as_json: bool) -> None:
    if as_json:
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _solution(out, sol, as_json: bool) -> int:
    out.write(write_solution(sol, "json" if as_json else "text"))
    return _STATUS_EXIT[sol.status]


# -- subcommands -------------------------------------------------------------------


def cmd_solve(args, out) -> int:
    inst = _load_utvpi(args.file)
    return _solution(out, solve_ilp(inst), args.json)


def cmd_relax(args, out) -> int:
    inst = _load_utvpi(args.file)
    sol = solve_lo(inst)
    if args.maximal and sol.status is Status.OPTIMAL:
        x = maximal_integrality(inst, sol.x)
        sol = LpSolution(Status.OPTIMAL, x, sol.value)
    return _solution(out, sol, args.json)


def cmd_approx(args, out) -> int:
    inst = _load_utvpi(args.file)
    try:
        sol = two_approx(inst, assume_nonneg=args.assume_nonneg)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return _solution(out, sol, args.json)


def cmd_decide(args, out) -> int:
    inst = _load_utvpi(args.file)
    try:
        k = Fraction(args.k)
        z, lo_point = decide(inst, k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    data: dict = {"k": str(k), "answer": "yes" if z is not None else "no"}
    lines = [f"k = {k}", f"answer {data['answer']}"]
    if z is not None:
        value = sum((w * v for w, v in zip(inst.objective, z)), Fraction(0))
        data["x"] = {f"x{j + 1}": str(v) for j, v in enumerate(z)}
        data["value"] = str(value)
        lines += [f"x{j + 1} = {v}" for j, v in enumerate(z)] + [f"value = {value}"]
    _emit(out, data, lines, args.json)
    return EXIT_OK if z is not None else EXIT_INFEASIBLE


def cmd_feasible(args, out) -> int:
    inst = _load_utvpi(args.file)
    g = dcs.double(inst)
    if args.integer:
        g = dcs.tighten_for_integers(g)
    cycle = dcs.detect_negative_cycle(g)
    kind = "integer" if args.integer else "real"
    data = {"kind": kind, "feasible": cycle is None}
    lines = [f"kind {kind}", f"feasible {'yes' if cycle is None else 'no'}"]
    if cycle is not None:
        data["cycle_weight"] = sum(e.weight for e in cycle)
        data["cycle_rows"] = sorted({e.row + 1 for e in cycle if e.row is not None})
        data["cycle_uses_tightened_bounds"] = any(e.row is None for e in cycle)
        via = [f"row {r}" for r in data["cycle_rows"]]
        if data["cycle_uses_tightened_bounds"]:
            via.append("tightened bounds")
        lines.append(f"negative cycle of weight {data['cycle_weight']} via {', '.join(via)}")
    _emit(out, data, lines, args.json)
    return EXIT_OK if cycle is None else EXIT_INFEASIBLE


def cmd_oracle(args, out) -> int:
    inst = _load(args.file)
    try:
        if args.relaxation:
            res = oracle.brute_lo_halfgrid(inst, _box(args))
            if res.status is Status.OPTIMAL:
                sol = LpSolution(Status.OPTIMAL, res.point, res.value)
            else:
                sol = LpSolution(Status.INFEASIBLE)
        else:
            sol = oracle.brute_ilp(inst, _box(args))
    except (ValueError, BoxTooLarge) as exc:
        raise InputError(str(exc)) from exc
    return _solution(out, sol, args.json)


def _report_lines(kind: str, rep) -> tuple:
    data = {
        "check": kind,
        "integer_status": rep.status.value,
        "integer_value": None if rep.ilo_value is None else str(rep.ilo_value),
        "relaxation_value": None if rep.lo_value is None else str(rep.lo_value),
        "relaxation_optima": rep.lo_optima,
        "grid_exact": rep.exact,
        "violations": [[str(v) for v in x] for x in rep.violations],
    }
    lines = [f"check {kind}", f"integer status {rep.status.value}"]
    if rep.ilo_value is not None:
        lines.append(f"integer value = {rep.ilo_value}")
    if rep.lo_value is not None:
        lines.append(f"relaxation value = {rep.lo_value}")
    lines.append(f"relaxation optima = {rep.lo_optima}")
    lines.append(f"grid exact = {'yes' if rep.exact else 'no (heuristic)'}")
    lines.append(f"violations = {len(rep.violations)}")
    lines += [f"violation at {_fmt_point(x)}" for x in rep.violations]
    return data, lines


def _row_indicators(inst):
    if isinstance(inst, UtvpiInstance):
        return [([(s, j) for j, s in row.terms], row.bound) for row in inst.constraints]
    return list(zip(inst.rows, inst.bounds))


def cmd_check(args, out) -> int:
    inst = _load(args.file)
    if args.property == "lconvex":
        lo, hi = _box(args) or (-2, 2)
        results = []
        lines = [f"check lconvex box [{lo}, {hi}]"]
        for i, (terms, bound) in enumerate(_row_indicators(inst)):
            local = Indicator(tuple((c, k) for k, (c, _) in enumerate(terms)), bound)
            witness = midpoint_sweep(local, len(terms), lo, hi)
            entry = {"row": i + 1, "violated": witness is not None}
            if witness is None:
                lines.append(f"row {i + 1}: no violation")
            else:
                entry["x"] = [str(v) for v in witness[0]]
                entry["y"] = [str(v) for v in witness[1]]
                lines.append(f"row {i + 1}: violated at x = {_fmt_point(witness[0])}, "
                             f"y = {_fmt_point(witness[1])}")
            results.append(entry)
        _emit(out, {"check": "lconvex", "rows": results}, lines, args.json)
        found = any(r["violated"] for r in results)
        if found and isinstance(inst, UtvpiInstance):
            raise InvariantViolation("midpoint inequality fails for a UTVPI row")
        return EXIT_OK

    try:
        if args.property == "persistency":
            rep = oracle.check_neighborhood_persistency(inst, _box(args))
        else:
            rep = check_half_persistency(inst, _box(args))
    except (ValueError, BoxTooLarge) as exc:
        raise InputError(str(exc)) from exc
    data, lines = _report_lines(args.property, rep)
    _emit(out, data, lines, args.json)
    if rep.violations and isinstance(inst, UtvpiInstance):
        raise InvariantViolation(f"{args.property} violated on a UTVPI instance")
    return EXIT_OK


def cmd_lconvex_check(args, out) -> int:
    lo, hi = args.box
    families = []
    if args.family in ("linear", "all"):
        for w in ((1, 1), (2, -3), (-1, 0), (0, 0)):
            families.append((f"linear w={w}", Linear(tuple(Fraction(v) for v in w))))
    if args.family in ("utvpi", "all"):
        for form in ROW_FORMS + ((-1, 1),):
            for beta in range(args.beta[0], args.beta[1] + 1):
                terms = tuple((c, k) for k, c in enumerate(form))
                families.append((f"indicator {form} >= {beta}", Indicator(terms, beta)))
    lines, entries = [], []
    failures = 0
    for label, g in families:
        witness = midpoint_sweep(g, 2, lo, hi)
        entries.append({"function": label, "violated": witness is not None})
        lines.append(f"{label}: {'ok' if witness is None else 'VIOLATED'}")
        failures += witness is not None
    lines.append(f"violations = {failures}")
    _emit(out, {"box": [lo, hi], "functions": entries, "violations": failures}, lines, args.json)
    if failures:
        raise InvariantViolation("midpoint inequality failed for a UTVPI family")
    return EXIT_OK


def cmd_fixtures(args, out) -> int:
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    for name, text in oracle.FIXTURE_TEXT.items():
        (target / name).write_text(text, encoding="utf-8")
    (target / "expected.json").write_text(json.dumps(oracle.EXPECTED, indent=2) + "\n",
                                          encoding="utf-8")
    names = sorted(oracle.FIXTURE_TEXT) + ["expected.json"]
    _emit(out, {"directory": str(target), "files": names},
          [f"wrote {target / n}" for n in names], args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="utvpi", description="Integer optimization on UTVPI systems")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="exact integer optimum")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("relax", parents=[common], help="half-integral LO relaxation")
    p.add_argument("file")
    p.add_argument("--maximal", action="store_true", help="maximize the integral coordinates")
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("approx", parents=[common], help="2-approximation (w >= 0, x >= 0)")
    p.add_argument("file")
    p.add_argument("--assume-nonneg", action="store_true", help="add x_j >= 0 rows")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("decide", parents=[common], help="is there a solution of value <= k?")
    p.add_argument("file")
    p.add_argument("--k", required=True, help="integer or p/q")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("feasible", parents=[common], help="real or integer feasibility")
    p.add_argument("file")
    p.add_argument("--integer", action="store_true")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("oracle", parents=[common], help="brute force inside a box")
    p.add_argument("file")
    p.add_argument("--box", nargs=2, type=int, metavar=("LO", "HI"))
    p.add_argument("--relaxation", action="store_true", help="half-grid LO instead of ILO")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", parents=[common], help="property reports by enumeration")
    p.add_argument("property", choices=["persistency", "half-persistency", "lconvex"])
    p.add_argument("file")
    p.add_argument("--box", nargs=2, type=int, metavar=("LO", "HI"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lconvex-check", parents=[common], help="midpoint inequality sweeps")
    p.add_argument("--box", nargs=2, type=int, default=[-2, 2], metavar=("LO", "HI"))
    p.add_argument("--family", choices=["linear", "utvpi", "all"], default="all")
    p.add_argument("--beta", nargs=2, type=int, default=[-3, 3], metavar=("LO", "HI"))
    p.set_defaults(func=cmd_lconvex_check)

    p = sub.add_parser("fixtures", parents=[common], help="write the fixture instance files")
    p.add_argument("--out", default="fixtures")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except AssertionError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
