"""Command-line driver.

Exit codes: 0 success (feasible / valid), 1 infeasible or invalid, 2 errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from . import approx, generate, greedy, oracle, parikh, reductions, window_dp
from .errors import DistColorError
from .formats import (
    Instance,
    NfaQuery,
    format_assignment,
    kind_of,
    parse_assignment,
    parse_instance,
    serialize_instance,
)
from .model import DPEDInstance, LCDInstance, explain_dped, explain_lcd

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2

ALGORITHMS = ("oracle", "greedy", "dp", "dlc", "approx", "fpt")
REDUCTIONS = {
    "mss-lcd": ("MSS", reductions.reduce_mss_to_lcd),
    "lcd-dped": ("LCD", reductions.reduce_lcd_to_dped),
    "dpe-dped": ("DPED", reductions.reduce_dpe_to_dped),
    "pce-dpe": ("PCE", reductions.reduce_pce_to_dpe),
}


class UsageError(Exception):
    """Bad combination of arguments and input; maps to exit code 2."""


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _budget_kw(budget: int | None) -> dict[str, int]:
    return {} if budget is None else {"budget": budget}


def _dpe_as_lists(instance: DPEDInstance) -> LCDInstance:
    if instance.demands is not None:
        raise UsageError("dlc on a DPED file needs 'demands none'")
    full = range(1, instance.num_colors + 1)
    lists = [(col,) if col else full for col in instance.precolor]
    return LCDInstance.build(instance.topology, instance.num_colors, lists, None, instance.d)


def _solver(instance: Instance, algo: str, budget: int | None) -> Callable[[], Sequence[int] | None]:
    kind = kind_of(instance)
    kw = _budget_kw(budget)
    if isinstance(instance, DPEDInstance):
        table = {
            "oracle": lambda: oracle.oracle_dped(instance, **kw),
            "greedy": lambda: greedy.solve_greedy(instance),
            "dp": lambda: window_dp.solve_dped_dp(instance),
            "fpt": lambda: parikh.solve_dped_fpt(instance, **kw),
            "dlc": lambda: window_dp.solve_dlc_dp(_dpe_as_lists(instance)),
        }
    elif isinstance(instance, LCDInstance):
        table = {
            "oracle": lambda: oracle.oracle_lcd(instance, **kw),
            "dlc": lambda: window_dp.solve_dlc_dp(instance),
        }
    elif isinstance(instance, NfaQuery):
        nfa, query = instance.nfa, instance.query
        table = {
            "oracle": lambda: oracle.oracle_cmpl(nfa, query.target, query.constraints, **kw),
            "fpt": lambda: parikh.solve_cmpl(nfa, query, **kw),
        }
    else:
        raise UsageError(f"{kind} files have no solver; reduce them first")
    if algo not in table:
        raise UsageError(f"algorithm '{algo}' does not apply to {kind} files")
    return table[algo]


def cmd_solve(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.infile))
    if args.algo == "approx":
        if not isinstance(instance, DPEDInstance):
            raise UsageError("approx takes DPED files")
        coloring, report = approx.solve_approx(instance)
        _write(args.out, format_assignment(coloring))
        if args.report:
            Path(args.report).write_text(report.to_text())
        else:
            sys.stderr.write(report.to_text())
        return EXIT_OK
    result = _solver(instance, args.algo, args.budget)()
    if result is None:
        print("infeasible", file=sys.stderr)
        return EXIT_NO
    _write(args.out, format_assignment(result))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.infile))
    values = parse_assignment(_read(args.coloring))
    if isinstance(instance, DPEDInstance):
        problem = explain_dped(instance, values)
    elif isinstance(instance, LCDInstance):
        problem = explain_lcd(instance, values)
    elif isinstance(instance, NfaQuery):
        problem = parikh.explain_cmpl_word(instance.nfa, instance.query, values)
    else:
        raise UsageError(f"{kind_of(instance)} files cannot be verified against a coloring")
    if problem:
        print(problem)
        return EXIT_NO
    print("valid")
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    expected, fn = REDUCTIONS[args.reduction]
    instance = parse_instance(_read(args.infile))
    if kind_of(instance) != expected:
        raise UsageError(f"{args.reduction} takes a {expected} file, got {kind_of(instance)}")
    _write(args.out, serialize_instance(fn(instance)))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    if min(args.n, args.c, args.d, args.p) < 0:
        raise UsageError("--n, --c, --d and --p must be non-negative")
    if args.kind == "dped":
        instance = generate.random_dped(rng, args.n, args.c, args.d, args.p)
    elif args.kind == "lcd":
        instance = generate.random_lcd(rng, args.n, args.c, args.d)
    else:
        instance = generate.random_mss(rng, args.n, args.c, args.d)
    _write(args.out, serialize_instance(instance))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distcolor", description="Distance coloring of paths with demands.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--in", dest="infile", required=True, help="instance file, '-' for stdin")
    p.add_argument("--out", help="coloring output (default stdout)")
    p.add_argument("--report", help="approx only: error report file (default stderr)")
    p.add_argument("--budget", type=int, help="search budget for oracle and fpt")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a coloring or word against an instance")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--coloring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="map an instance through a reduction")
    p.add_argument("reduction", choices=sorted(REDUCTIONS))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("kind", choices=("dped", "lcd", "mss"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="vertices (mss: number of items)")
    p.add_argument("--c", type=int, required=True, help="colors (mss: largest entry)")
    p.add_argument("--d", type=int, required=True, help="distance (mss: dimension k)")
    p.add_argument("--p", type=int, default=0, help="dped only: precolored vertices")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (DistColorError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
