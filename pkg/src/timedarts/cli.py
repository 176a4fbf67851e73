"""Command line front end: ``check``, ``gen`` and ``bench``.

Exit codes: 0 for a verdict (or success), 1 for usage and input errors,
3 when a search hits its resource limits.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bench
from .darts import reach_darts
from .model import ParseError, ValidationError, dump_model, load_model
from .modelgen import RandomModelParams, gen_fig4, gen_fischer, gen_lcm, gen_random
from .naive import reach_naive
from .search import Limits, ResourceLimit

EXIT_OK, EXIT_USAGE, EXIT_LIMIT = 0, 1, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bound(text):
    if text.lower() in ("inf", "infinity", "none"):
        return math.inf
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("bound must be nonnegative")
    return value


def _limits(args) -> Limits:
    timeout = Limits.timeout if args.timeout_ms is None else args.timeout_ms / 1000
    return Limits(max_stored=args.max_stored, timeout=timeout)


def _add_limit_flags(p):
    p.add_argument("--max-stored", type=int, default=Limits.max_stored, help="cap on stored states")
    p.add_argument("--timeout-ms", type=int, default=None, help="wall-clock cap per run")


def build_parser():
    parser = _Parser(prog="timedarts", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide reachability of a location")
    p.add_argument("model", help="model file (JSON)")
    p.add_argument("--goal", required=True)
    p.add_argument("--engine", choices=["naive", "darts"], default="darts")
    p.add_argument("--order", choices=["fifo", "lifo"], default="fifo")
    p.add_argument("--trace", action="store_true", help="per-iteration dump of the dart list (darts only)")
    _add_limit_flags(p)

    p = sub.add_parser("gen", help="write a generated model")
    p.add_argument("kind", choices=["fig4", "lcm", "fischer", "random"])
    p.add_argument("--n", type=int, default=4, help="lcm: number of looping clocks")
    p.add_argument("--bound", type=_bound, default=math.inf, help="lcm: upper bound on y (or inf)")
    p.add_argument("--k", type=int, default=3, help="fischer: delay constant")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--clocks", type=int, default=RandomModelParams.clocks)
    p.add_argument("--locations", type=int, default=RandomModelParams.locations)
    p.add_argument("--edges", type=int, default=RandomModelParams.edges)
    p.add_argument("--max-bound", type=int, default=RandomModelParams.max_bound)
    p.add_argument("--reset-prob", type=float, default=RandomModelParams.reset_prob)
    p.add_argument("--guard-density", type=float, default=RandomModelParams.guard_density)
    p.add_argument("-o", "--out", default="-", help="output path ('-' for stdout)")

    p = sub.add_parser("bench", help="run a benchmark suite and write CSV")
    p.add_argument("suite", choices=["fischer", "lcm", "custom"])
    p.add_argument("--params", default="3..9", help="'lo..hi' or comma list")
    p.add_argument("--engines", default="naive,darts")
    p.add_argument("--models", nargs="*", default=[], help="custom suite: model files")
    p.add_argument("--goal", default=None, help="goal location (custom suite)")
    p.add_argument("--csv", default="-", help="output path ('-' for stdout)")
    p.add_argument("--jobs", type=int, default=1, help="run cells in parallel")
    _add_limit_flags(p)
    return parser


def cmd_check(args) -> int:
    try:
        with open(args.model, "rb") as fh:
            model = load_model(fh.read())
        if args.goal not in model.locations:
            print(f"error: unknown goal location {args.goal!r}", file=sys.stderr)
            return EXIT_USAGE
    except (OSError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    limits = _limits(args)
    try:
        if args.engine == "darts":
            trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
            res = reach_darts(model, args.goal, args.order, limits, trace=trace)
        else:
            if args.trace:
                print("warning: --trace only applies to the darts engine", file=sys.stderr)
            res = reach_naive(model, args.goal, args.order, limits)
    except ResourceLimit as exc:
        print(f"LIMIT {exc.kind}", file=sys.stderr)
        print(exc.result.stats_line(), file=sys.stderr)
        return EXIT_LIMIT
    print("REACHABLE" if res.reachable else "UNREACHABLE")
    print(res.stats_line(), file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.kind == "fig4":
            model = gen_fig4()
        elif args.kind == "lcm":
            model = gen_lcm(args.n, args.bound)
        elif args.kind == "fischer":
            model = gen_fischer(args.k)
        else:
            model = gen_random(RandomModelParams(
                clocks=args.clocks, locations=args.locations, edges=args.edges,
                max_bound=args.max_bound, reset_prob=args.reset_prob,
                guard_density=args.guard_density, seed=args.seed,
            ))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    data = dump_model(model)
    if args.out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    return EXIT_OK


def cmd_bench(args) -> int:
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    unknown = [e for e in engines if e not in bench.ENGINES]
    if unknown or not engines:
        print(f"error: unknown engines {unknown}", file=sys.stderr)
        return EXIT_USAGE
    try:
        params = bench.parse_params(args.params)
        cells = list(bench.suite_cells(args.suite, params, engines, args.models, args.goal))
    except (ValueError, OSError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = sys.stdout if args.csv == "-" else open(args.csv, "w", newline="")
    try:
        bench.run_bench(cells, _limits(args), out, jobs=args.jobs)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


COMMANDS = {"check": cmd_check, "gen": cmd_gen, "bench": cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
