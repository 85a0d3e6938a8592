"""Command-line front end: ``ratmap {analyze,orbit,sweep,verify}``.

Exit codes: 0 success, 1 usage error, 2 numeric failure (including a failed
``verify``).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from dataclasses import asdict

from . import golden
from .dynamics import TOL_CONV, default_max_iter, describe, iterate_orbit
from .model import InvalidParameters, Params
from .polyroot import NumericFailure
from .report import analyze, sweep, write_sweep_csv

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(name):
    def conv(text):
        v = float(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {text}")
        return v
    return conv


def _add_params(p, with_c=True):
    p.add_argument("--a", type=_positive("a"), required=True)
    p.add_argument("--b", type=_positive("b"), required=True)
    if with_c:
        p.add_argument("--c", type=float, required=True)
    p.add_argument("--d", type=_positive("d"), required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ratmap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="thresholds, equilibria, 2-cycles and regime")
    _add_params(p)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("orbit", help="simulate one orbit and report its fate")
    _add_params(p)
    p.add_argument("--x0", type=_positive("x0"), required=True)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--tol", type=_positive("tol"), default=TOL_CONV)
    p.add_argument("--trace", metavar="PATH", help="write iterates as CSV (n, x_n)")
    p.add_argument("--trace-limit", type=int, default=10_000)
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("sweep", help="equilibrium/cycle counts along a range of c")
    _add_params(p, with_c=False)
    p.add_argument("--c-from", type=float, required=True)
    p.add_argument("--c-to", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="recompute the reference worked examples")
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


@contextlib.contextmanager
def _output(path):
    if path:
        with open(path, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def cmd_analyze(args) -> int:
    rep = analyze(Params(args.a, args.b, args.c, args.d))
    with _output(args.out) as fh:
        fh.write((rep.to_json() if args.format == "json" else rep.to_text()) + "\n")
    return EXIT_OK


def cmd_orbit(args) -> int:
    params = Params(args.a, args.b, args.c, args.d)
    max_iter = args.max_iter if args.max_iter is not None else default_max_iter()
    if max_iter < 1:
        raise UsageError("--max-iter must be at least 1")
    limit = args.trace_limit if args.trace else 0
    res = iterate_orbit(params, args.x0, max_iter, args.tol, trace_limit=limit)
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("n", "x_n"))
            for n, x in enumerate(res.trace):
                w.writerow((n, repr(x)))
    if args.format == "json":
        out = {"fate": res.fate.kind, **asdict(res.fate), "iterations": res.iterations,
               "final_points": list(res.final_points)}
        print(json.dumps(out))
    else:
        print(f"{describe(res.fate)} after {res.iterations} iterations")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    rows = sweep(args.a, args.b, args.d, (args.c_from, args.c_to, args.steps))
    with _output(args.out) as fh:
        if args.format == "csv":
            write_sweep_csv(rows, fh)
        else:
            fh.write(json.dumps({"rows": [asdict(r) for r in rows]}) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = golden.verify()
    if args.format == "json":
        print(json.dumps({"results": [
            {"label": r.label, "params": list(r.params), "passed": r.passed, "error": r.error,
             "checks": [asdict(c) for c in r.checks]}
            for r in results
        ]}, default=str))
    else:
        for r in results:
            detail = r.error or ", ".join(f"{c.name}={'ok' if c.ok else 'FAIL'}" for c in r.checks)
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.label:8s} {r.params}  {detail}")
        print(f"{sum(r.passed for r in results)}/{len(results)} pass")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


COMMANDS = {"analyze": cmd_analyze, "orbit": cmd_orbit, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, InvalidParameters) as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
