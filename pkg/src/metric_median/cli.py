"""Command-line entry point: gen, solve, verify, trace, bench.

Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from .dp import distinct_pair_count, find_median, query_trace
from .errors import ParseError, UsageError
from .exact import exact_median, verify_ratio
from .fileio import format_decimal, read_instance, write_instance
from .instances import KINDS, GenSpec, generate
from .metric import RecordingOracle, cost, validate_metric

CSV_FIELDS = [
    "kind",
    "n",
    "h",
    "t",
    "queries",
    "distinct_pairs",
    "proxy_cost",
    "true_cost",
    "opt_cost",
    "ratio",
    "elapsed_ms",
    "seed",
]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _n_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("n-list is empty")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="metric-median", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--density", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    s = sub.add_parser("solve", help="run find-median on an instance file")
    s.add_argument("--input", required=True)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--validate", action="store_true", help="check the metric axioms first")
    s.add_argument("--trace", metavar="FILE", help="write the recorded query trace, one 'i j' per line")
    s.add_argument("--parallel", action="store_true")

    v = sub.add_parser("verify", help="check the 2h approximation bound against the exact median")
    v.add_argument("--input", required=True)
    v.add_argument("--h", type=int, required=True)
    v.add_argument("--parallel", action="store_true")

    tr = sub.add_parser("trace", help="print the query schedule for (n, h) without any metric")
    tr.add_argument("--n", type=int, required=True)
    tr.add_argument("--h", type=int, required=True)
    tr.add_argument("--out", help="file to write instead of stdout")

    b = sub.add_parser("bench", help="query-count scaling benchmark with CSV output")
    b.add_argument("--kind", required=True, choices=KINDS)
    b.add_argument("--h", type=int, required=True)
    b.add_argument("--n-list", type=_n_list, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--dim", type=int, default=2)
    b.add_argument("--density", type=float, default=1.0)
    b.add_argument("--exact-max", type=int, default=4096)
    b.add_argument("--parallel", action="store_true")
    b.add_argument("--csv", required=True)

    for name, sp in (("gen", g), ("solve", s), ("verify", v), ("trace", tr), ("bench", b)):
        sp.set_defaults(handler=COMMANDS[name], subparser=sp)
    return parser


def _check_h(parser, h):
    if h < 2:
        parser.error(f"--h must be an integer >= 2, got {h}")


def _write_pairs(pairs, fh):
    for i, j in pairs:
        fh.write(f"{i} {j}\n")


def cmd_gen(args, parser):
    try:
        spec = GenSpec(args.kind, args.n, dim=args.dim, seed=args.seed, density=args.density)
    except UsageError as exc:
        parser.error(str(exc))
    write_instance(generate(spec), args.out)
    return 0


def cmd_solve(args, parser):
    _check_h(parser, args.h)
    metric = read_instance(args.input)
    if args.validate:
        report = validate_metric(metric)
        if not report.ok:
            print(f"invalid metric: {report.kind} violation at {report.where}: {report.detail}", file=sys.stderr)
            return 1
    oracle = RecordingOracle(metric) if args.trace else metric
    res = find_median(oracle, args.h, parallel=args.parallel)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
            _write_pairs(oracle.trace, fh)
    print(f"index={res.index} proxy={format_decimal(res.proxy_cost)} queries={res.queries} t={res.params.t}")
    return 0


def cmd_verify(args, parser):
    _check_h(parser, args.h)
    metric = read_instance(args.input)
    rep = verify_ratio(metric, args.h, parallel=args.parallel)
    verdict = "PASS" if rep.passed else "FAIL"
    print(f"ratio={rep.ratio!r} bound={rep.bound} {verdict}")
    return 0 if rep.passed else 1


def cmd_trace(args, parser):
    _check_h(parser, args.h)
    if args.n < 1:
        parser.error(f"--n must be >= 1, got {args.n}")
    pairs = query_trace(args.n, args.h)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            _write_pairs(pairs, fh)
    else:
        _write_pairs(pairs, sys.stdout)
    return 0


def loglog_slope(ns, queries) -> float:
    slope, _ = np.polyfit(np.log(np.asarray(ns, dtype=float)), np.log(np.asarray(queries, dtype=float)), 1)
    return float(slope)


def run_bench(kind, h, n_list, *, seed=0, dim=2, density=1.0, exact_max=4096, parallel=False):
    """One record per n; returns (records, slope or None)."""
    records = []
    for n in n_list:
        metric = generate(GenSpec(kind, n, dim=dim, seed=seed, density=density))
        start = time.perf_counter()
        res = find_median(metric, h, parallel=parallel)
        elapsed = (time.perf_counter() - start) * 1000.0
        true_cost = cost(metric, res.index)
        rec = {
            "kind": kind,
            "n": n,
            "h": h,
            "t": res.params.t,
            "queries": res.queries,
            "distinct_pairs": distinct_pair_count(n, h),
            "proxy_cost": format_decimal(res.proxy_cost),
            "true_cost": format_decimal(true_cost),
            "opt_cost": "",
            "ratio": "",
            "elapsed_ms": f"{elapsed:.3f}",
            "seed": seed,
        }
        if n <= exact_max:
            opt = exact_median(metric).opt_cost
            rec["opt_cost"] = format_decimal(opt)
            rec["ratio"] = repr(1.0 if opt == 0 else true_cost / opt)
        records.append(rec)
    positive = [(r["n"], r["queries"]) for r in records if r["queries"] > 0]
    slope = None
    if len({n for n, _ in positive}) >= 2:
        slope = loglog_slope(*zip(*positive))
    return records, slope


def cmd_bench(args, parser):
    _check_h(parser, args.h)
    if any(n < 1 for n in args.n_list):
        parser.error("every n in --n-list must be >= 1")
    try:
        GenSpec(args.kind, 1, dim=args.dim, seed=args.seed, density=args.density)
    except UsageError as exc:
        parser.error(str(exc))
    records, slope = run_bench(
        args.kind,
        args.h,
        args.n_list,
        seed=args.seed,
        dim=args.dim,
        density=args.density,
        exact_max=args.exact_max,
        parallel=args.parallel,
    )
    with open(args.csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        if slope is not None:
            fh.write(f"# slope={slope!r}\n")
    for rec in records:
        print(f"n={rec['n']} t={rec['t']} queries={rec['queries']} elapsed_ms={rec['elapsed_ms']}")
    if slope is not None:
        print(f"slope={slope:.4f} (theory {1 + 1 / args.h:.4f})")
    bad = [r for r in records if r["ratio"] and float(r["ratio"]) > 2 * args.h * (1 + 1e-12)]
    return 1 if bad else 0


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "verify": cmd_verify, "trace": cmd_trace, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, args.subparser)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
