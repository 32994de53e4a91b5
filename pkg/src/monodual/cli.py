"""Command-line interface.

Exit codes: 0 success, 1 violation or mismatch, 2 usage, parse or
capacity error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import applications as apps
from . import problemfile
from .bounds import format_reports, reports_to_json, verify_bounds
from .brute import enumerate_all
from .generation import JointGenerator, generate_families
from .lattice import CapacityError
from .oracles import InvalidInputError, UnboundedVariableError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(tag, v) -> str:
    return " ".join([tag, *map(str, v)])


# ---------------------------------------------------------------------------
# subcommands


def cmd_enumerate(args, out) -> int:
    system = problemfile.load(args.problem)
    gen = JointGenerator(system)
    items = gen.run(args.limit)
    if args.sorted:
        items = sorted(items)
    for tag, v in items:
        print(_fmt(tag, v), file=out)
    if args.stats:
        st = gen.state
        print(f"# emitted {len(items)}", file=out)
        print(f"# oracle_calls {st.oracle_calls}", file=out)
        print(f"# dual_steps {st.dual_steps}", file=out)
        print(f"# complete {'yes' if st.done else 'no'}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    system = problemfile.load(args.problem)
    gen = JointGenerator(system)
    feas_tag, dual_tag = gen.tags
    F, D = generate_families(system)
    try:
        F0, D0 = enumerate_all(system, args.max_points)
    except CapacityError as err:
        raise CapacityError(f"{err}; verify only works on small boxes (raise --max-points)") from None
    ok = True
    for tag, got, want in ((feas_tag, F, F0), (dual_tag, D, D0)):
        for v in sorted(want - got):
            print(_fmt(f"missing {tag}", v), file=out)
            ok = False
        for v in sorted(got - want):
            print(_fmt(f"extra {tag}", v), file=out)
            ok = False
    if ok:
        print(f"OK {feas_tag} {len(F)} {dual_tag} {len(D)}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bounds(args, out) -> int:
    system = problemfile.load(args.problem)
    reports = verify_bounds(system, args.trials, random.Random(args.seed))
    if args.json:
        print(reports_to_json(reports), file=out)
    elif not reports:
        print("# no maximal feasible vectors; nothing to check", file=out)
    else:
        print(format_reports(reports), file=out)
    return EXIT_FAIL if any(r.verdict == "fail" for r in reports) else EXIT_OK


def _parse_list(text: str) -> list:
    return [Fraction(v.strip()) for v in text.split(",") if v.strip()]


def _parse_matrix(text: str) -> list:
    return [_parse_list(row) for row in text.split(";")]


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) in (None, [])]
    if missing:
        raise InvalidInputError(f"build {args.kind} needs {', '.join(missing)}")


def cmd_build(args, out) -> int:
    kind = args.kind
    try:
        if kind == "transversal":
            _need(args, "edges")
            edges = [[int(v) for v in e.split(",") if v.strip()] for e in args.edges.split(";")]
            system = apps.build_transversal(edges, args.n)
        elif kind == "nash":
            _need(args, "utilities", "demands", "t", "caps")
            system = apps.build_nash_welfare(
                _parse_matrix(args.utilities), _parse_list(args.demands),
                Fraction(args.t[-1]), [int(v) for v in args.caps.split(",")])
        elif kind == "knapsack":
            _need(args, "means", "factors", "alpha", "t")
            spec = apps.ChanceKnapsackSpec(
                [_parse_list(m) for m in args.means], [_parse_matrix(f) for f in args.factors],
                [Fraction(a) for a in args.alpha], [Fraction(t) for t in args.t])
            system = apps.build_chance_knapsack(spec)
        elif kind == "cover":
            _need(args, "means", "deviations", "alpha", "t")
            spec = apps.ChanceCoverSpec(
                [_parse_list(m) for m in args.means], [_parse_list(d) for d in args.deviations],
                [Fraction(a) for a in args.alpha], [Fraction(t) for t in args.t])
            system = apps.build_chance_cover(spec).system
        else:
            _need(args, "operator")
            system = apps.build_quantum_cover([_parse_matrix(m) for m in args.operator])
    except (ValueError, ZeroDivisionError) as err:
        if isinstance(err, InvalidInputError):
            raise
        raise InvalidInputError(f"bad parameter: {err}") from None
    print(problemfile.dumps(system), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monodual", description="Enumerate maximal feasible and "
                     "minimal infeasible integer vectors of monotone systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="stream both families by joint generation")
    p.add_argument("problem")
    p.add_argument("--limit", type=int, default=None, help="stop after N emissions")
    p.add_argument("--sorted", action="store_true", help="sort the emitted lines")
    p.add_argument("--stats", action="store_true", help="append '#' statistic lines")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="compare joint generation with a full scan")
    p.add_argument("problem")
    p.add_argument("--max-points", type=int, default=None, help="box volume limit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="check dual bounds on random subfamilies")
    p.add_argument("problem")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("build", help="emit a problem file for an application")
    p.add_argument("kind", choices=["transversal", "nash", "knapsack", "cover", "quantum"])
    p.add_argument("--edges", help='1-based edges, e.g. "1,2;2,3"')
    p.add_argument("--n", type=int, help="number of vertices")
    p.add_argument("--utilities", help='utility matrix, rows separated by ";"')
    p.add_argument("--demands", help="comma-separated demands")
    p.add_argument("--caps", help="comma-separated caps")
    p.add_argument("--t", action="append", help="threshold (repeat per constraint)")
    p.add_argument("--means", action="append", help="mean vector (repeat per constraint)")
    p.add_argument("--factors", action="append", help="factor matrix (repeat per constraint)")
    p.add_argument("--deviations", action="append", help="deviation vector (repeat per constraint)")
    p.add_argument("--alpha", action="append", help="reliability (repeat per constraint)")
    p.add_argument("--operator", action="append", help="operator matrix (repeat per operator)")
    p.set_defaults(func=cmd_build)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UnboundedVariableError, InvalidInputError, CapacityError, OSError) as err:
        print(f"monodual: error: {err}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
