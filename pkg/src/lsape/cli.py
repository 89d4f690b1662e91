"""Command-line front end.

Exit codes: 0 on success, 1 when ``verify`` finds a problem, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from .bench import parse_range, parse_sizes, run_bench, write_csv
from .core import (
    AssignmentStatus,
    _raw_cost,
    assignment_problems,
    check_slackness,
    dual_feasible,
    validate_assignment,
)
from .errors import LsapeError
from .generators import DEFAULT_RANGE, FAMILIES, GeneratorSpec, generate
from .hungarian import solve
from .oracle import count_assignments
from .reference import solve_via_slsape
from .textio import format_matrix, read_matrix, read_solution

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _parse_value_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise InputError(f"bad --range {text!r}; expected lo:hi")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise InputError(f"bad --range {text!r}; expected lo:hi") from None


def cmd_solve(args) -> int:
    c = read_matrix(args.file)
    if args.solver == "lsape":
        result = solve(c, preprocess=not args.no_preprocess, tolerance=args.tolerance)
    else:
        result = solve_via_slsape(c)
    print(json.dumps(result.to_dict()))
    return EXIT_OK


def cmd_generate(args) -> int:
    lo, hi = _parse_value_range(args.range) if args.range else DEFAULT_RANGE
    try:
        spec = GeneratorSpec(args.family, args.n, args.m, seed=args.seed,
                             lo=lo, hi=hi, integer=args.integer)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(format_matrix(generate(spec), header=spec.header()))
    return EXIT_OK


def cmd_verify(args) -> int:
    c = read_matrix(args.instance)
    sol = read_solution(args.solution)
    a = sol.assignment
    ok = True

    status = validate_assignment(a, c.n, c.m)
    print(f"class: {status.value}")
    if status is AssignmentStatus.INVALID:
        for problem in assignment_problems(a, c.n, c.m):
            print(f"  violation: {problem}")
        return EXIT_FAIL
    if status is AssignmentStatus.PARTIAL:
        ok = False

    # Absolute slack for real-valued files, exact on integer ones.
    tol = args.tolerance if args.tolerance is not None else (
        0.0 if c.is_integral() else 1e-9 * max(1.0, float(c.costs.max(initial=0.0)))
    )

    if sol.cost is not None:
        actual = _raw_cost(a, c.costs)
        same = math.isclose(actual, sol.cost, rel_tol=0.0, abs_tol=tol) if tol else actual == sol.cost
        same = same and status is AssignmentStatus.COMPLETE
        print(f"cost: {'ok' if same else 'MISMATCH'} (claimed {sol.cost!r}, recomputed {actual!r})")
        ok = ok and same

    if sol.duals is not None:
        d = sol.duals
        if (d.n, d.m) != (c.n, c.m):
            print(f"duals: size mismatch ({d.n}, {d.m}) vs ({c.n}, {c.m})")
            return EXIT_FAIL
        feasible = dual_feasible(d, c, tol)
        slack = check_slackness(a, d, c, tol)
        print(f"dual feasibility: {'ok' if feasible else 'VIOLATED'}")
        print(f"complementary slackness: {'ok' if slack else 'VIOLATED'}")
        ok = ok and feasible and slack

    print("result: pass" if ok else "result: FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_count(args) -> int:
    if args.n < 0 or args.m < 0:
        raise InputError("n and m must be non-negative")
    print(count_assignments(args.n, args.m))
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        if args.sizes:
            if args.m_range:
                raise InputError("use either --sizes or --n with --m-range")
            sizes = parse_sizes(args.sizes)
        elif args.n is not None and args.m_range:
            sizes = [(args.n, m) for m in parse_range(args.m_range)]
        else:
            raise InputError("give --sizes n:m,... or --n N --m-range a:b:step")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    unknown = [f for f in families if f not in FAMILIES]
    if unknown or not families:
        raise InputError(f"unknown families {unknown}; expected some of {FAMILIES}")
    if args.reps < 1:
        raise InputError("--reps must be at least 1")

    records = run_bench(families, sizes, reps=args.reps, seed=args.seed)
    write_csv(records, args.out if args.out else sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsape", description="Linear sum assignment with edition (substitution, removal, insertion)."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file and print the solution as JSON")
    p.add_argument("file")
    p.add_argument("--solver", choices=("lsape", "slsape"), default="lsape")
    p.add_argument("--no-preprocess", action="store_true", help="start from zero duals")
    p.add_argument("--tolerance", type=float, default=0.0, help="zero test for reduced costs")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="write a generated instance to stdout")
    p.add_argument("--family", choices=FAMILIES, default="uniform-random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", help="value range lo:hi for uniform-random (default 0:10)")
    p.add_argument("--integer", action="store_true", help="draw integers in [lo, hi]")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--tolerance", type=float, default=None,
                   help="absolute tolerance (default: exact on integer costs, 1e-9 * max cost otherwise)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="number of epsilon-assignments between sets of sizes n and m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bench", help="time lsape against the squared LSAP route, CSV output")
    p.add_argument("--families", default="uniform-random", help="comma-separated family names")
    p.add_argument("--sizes", help='explicit sizes "n:m,n:m,..."')
    p.add_argument("--n", type=int, help="fixed n for an m sweep")
    p.add_argument("--m-range", help="inclusive m sweep start:stop:step")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; keep --help at 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, LsapeError, OSError, ValueError) as exc:
        print(f"lsape {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
