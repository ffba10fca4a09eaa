"""Command line: ``query``, ``bench``, ``gen`` and ``render``."""

from __future__ import annotations

import argparse
import logging
import sys

from visipoly.bench import ALGORITHMS, Solver, VerificationError, run_bench
from visipoly.exact import to_exact
from visipoly.joe_simpson import HolesNotSupported
from visipoly.polygon import (
    AntennaMode,
    ParseError,
    QueryOutsidePolygon,
    ValidationError,
    emit_wkt,
    parse_wkt,
)
from visipoly.render import render_svg
from visipoly.scenarios import (
    Scenario,
    gen_comb,
    gen_random_simple,
    gen_random_with_holes,
    random_interior_points,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVALID = 4
EXIT_OUTSIDE = 5
EXIT_MISMATCH = 6  # joe-simpson asked to handle holes
EXIT_VERIFY = 7

log = logging.getLogger("visipoly")


class UsageError(Exception):
    pass


def _point(text: str):
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise UsageError(f"expected a point as 'x y', got {text!r}")
    try:
        return (to_exact(parts[0]), to_exact(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coordinate in {text!r}") from exc


def _mode(name: str) -> AntennaMode:
    return AntennaMode.INCLUDE if name == "include" else AntennaMode.EXCLUDE


def _read_polygon(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_wkt(fh.read())


def parse_scenario(text: str, seed: int) -> Scenario:
    """``comb:K``, ``random-simple:N`` or ``random-holes:N,H``."""
    kind, _, arg = text.partition(":")
    try:
        nums = [int(a) for a in arg.split(",")] if arg else []
    except ValueError as exc:
        raise UsageError(f"bad scenario parameters in {text!r}") from exc
    if kind == "comb" and len(nums) == 1:
        return gen_comb(nums[0])
    if kind == "random-simple" and len(nums) == 1:
        return Scenario(gen_random_simple(nums[0], seed), None, {"seed": seed})
    if kind == "random-holes" and len(nums) == 2:
        return Scenario(gen_random_with_holes(nums[0], nums[1], seed), None, {"seed": seed})
    raise UsageError(f"unknown scenario {text!r}; use comb:K, random-simple:N or random-holes:N,H")


def _write(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _query_common(args):
    poly = _read_polygon(args.input)
    q = _point(args.point)
    solver = Solver(args.algorithm, poly)
    solver.prepare()
    v = solver.query(q, _mode(args.antennae))
    return poly, q, v, solver


def cmd_query(args) -> int:
    poly, q, v, solver = _query_common(args)
    _write(emit_wkt(v) + "\n", args.output)
    if args.svg:
        render_svg(poly, q, v, args.svg)
    if args.counters:
        for k, val in sorted(solver.counters.items()):
            print(f"{args.algorithm}.{k}={val}", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    poly, q, v, _ = _query_common(args)
    text = render_svg(poly, q, v)
    _write(text, args.svg or args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    sc = parse_scenario(args.scenario, args.seed)
    _write(sc.to_wkt(), args.output)
    return EXIT_OK


def _query_set(text: str, poly, seed: int):
    if text == "vertices":
        return [p for ring in poly.rings for p in ring]
    kind, _, num = text.partition(":")
    if kind == "random" and num.isdigit():
        return random_interior_points(poly, int(num), seed)
    raise UsageError(f"bad query set {text!r}; use vertices or random:N")


def cmd_bench(args) -> int:
    if bool(args.input) == bool(args.scenario):
        raise UsageError("bench needs exactly one of --input or --scenario")
    poly = _read_polygon(args.input) if args.input else parse_scenario(args.scenario, args.seed).polygon
    if args.algorithm:
        algos = []
        for item in args.algorithm:
            algos += [a for a in item.split(",") if a]
        for a in algos:
            if a not in ALGORITHMS:
                raise UsageError(f"unknown algorithm {a!r}")
    else:
        algos = [a for a in ALGORITHMS if not (a == "joe-simpson" and poly.holes)]
    queries = _query_set(args.queries, poly, args.seed)
    report = run_bench(
        poly, algos, queries, args.repeat, _mode(args.antennae), not args.no_verify, args.jobs
    )
    print(report.table())
    print()
    for line in report.lines(counters=args.counters):
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="visipoly", description="Exact visibility polygons.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    def query_flags(sp, svg_help):
        sp.add_argument("--input", required=True, help="polygon file in WKT")
        sp.add_argument("--point", required=True, help='query point as "x y" (decimals or p/q)')
        sp.add_argument("--algorithm", choices=ALGORITHMS, default="expansion")
        sp.add_argument("--antennae", choices=("include", "exclude"), default="include")
        sp.add_argument("--output", help="output file (default stdout)")
        sp.add_argument("--svg", help=svg_help)

    q = sub.add_parser("query", help="visibility polygon of one point")
    query_flags(q, "also write an SVG picture here")
    q.add_argument("--counters", action="store_true", help="print work counters to stderr")
    q.set_defaults(func=cmd_query)

    r = sub.add_parser("render", help="SVG picture of P, q and V(q)")
    query_flags(r, "SVG destination (same as --output)")
    r.set_defaults(func=cmd_render)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("scenario", help="comb:K, random-simple:N or random-holes:N,H")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time the algorithms on one instance")
    b.add_argument("--input", help="polygon file in WKT")
    b.add_argument("--scenario", help="generate the instance instead of reading it")
    b.add_argument("--algorithm", action="append", help="algorithm name(s), repeatable or comma separated")
    b.add_argument("--queries", default="vertices", help="vertices or random:N")
    b.add_argument("--repeat", type=int, default=1)
    b.add_argument("--antennae", choices=("include", "exclude"), default="include")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--counters", action="store_true", help="include counter lines in the report")
    b.add_argument("--no-verify", action="store_true", help="skip the cross-algorithm comparison")
    b.add_argument("--jobs", type=int, default=1, help="worker processes across queries")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid polygon: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except QueryOutsidePolygon:
        print("query point outside polygon", file=sys.stderr)
        return EXIT_OUTSIDE
    except HolesNotSupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
