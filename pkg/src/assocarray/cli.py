"""``assocarray-bench``: generate data, run timings, print reports."""

from __future__ import annotations

import argparse
import logging
import sys

from .bench import TESTS, BenchConfig, check_scaling, emit_report, format_table, read_report, run_benchmarks
from .io import N_MAX, N_MIN, generate_bench

log = logging.getLogger("assocarray.cli")


def _tests(text: str) -> tuple[str, ...]:
    names = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [t for t in names if t not in TESTS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown test(s) {bad}; choose from {','.join(TESTS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="assocarray-bench", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write one benchmark dataset as flat files")
    g.add_argument("--n", type=int, required=True, help=f"size exponent, {N_MIN}..{N_MAX}")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-dir", required=True)

    r = sub.add_parser("run", help="time the benchmark tests over a range of n")
    r.add_argument("--n-min", type=int, default=N_MIN)
    r.add_argument("--n-max", type=int, default=N_MAX)
    r.add_argument("--reps", type=int, default=10)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tests", type=_tests, default=TESTS, help="comma-separated subset of " + ",".join(TESTS))
    r.add_argument("--out", default="-", help="report path; '-' for stdout")
    r.add_argument("--format", choices=("csv", "tsv"), default="csv")
    r.add_argument("--matmul-cap", type=int, default=17)
    r.add_argument("--ewise-cap", type=int, default=13)
    r.add_argument("--scaling-guard", type=float, default=8.0,
                   help="fail if ctor/add mean time grows more than this per step in n (0 disables)")
    r.add_argument("--no-validate", action="store_true", help="skip invariant checks on results")

    rep = sub.add_parser("report", help="print a saved report")
    rep.add_argument("--in", dest="path", required=True)
    rep.add_argument("--format", choices=("table", "csv", "tsv"), default="table")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(message)s")
    try:
        if args.command == "gen":
            data = generate_bench(args.n, args.seed)
            for path in data.save(args.out_dir):
                log.info("wrote %s", path)
        elif args.command == "run":
            cfg = BenchConfig(
                n_min=args.n_min, n_max=args.n_max, repetitions=args.reps, seed=args.seed,
                tests=args.tests, matmul_cap=args.matmul_cap, ewise_cap=args.ewise_cap,
                validate=not args.no_validate,
            )
            records = run_benchmarks(cfg)
            emit_report(records, args.out, args.format)
            if args.scaling_guard > 0:
                problems = check_scaling(records, args.scaling_guard)
                for msg in problems:
                    print(f"scaling guard: {msg}", file=sys.stderr)
                if problems:
                    return 1
        else:
            records = read_report(args.path)
            if args.format == "table":
                print(format_table(records))
            else:
                emit_report(records, "-", args.format)
    except Exception as e:  # noqa: BLE001 -- every failure becomes a diagnostic + exit 1
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
