"""Timing harness for the constructor and the three binary operations."""

from __future__ import annotations

import csv
import gc
import io
import logging
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from .assoc import Assoc, check_invariants, from_triples
from .io import N_MAX, N_MIN, generate_bench

log = logging.getLogger(__name__)

TESTS = ("ctor_num", "ctor_str", "add", "matmul", "ewise_mul")
BINARY_TESTS = ("add", "matmul", "ewise_mul")
COLUMNS = ("test", "n", "mean_seconds", "runs", "nnz_a", "nnz_b", "nnz_out")


@dataclass
class BenchConfig:
    n_min: int = N_MIN
    n_max: int = N_MAX
    repetitions: int = 10
    seed: int = 0
    tests: tuple[str, ...] = TESTS
    matmul_cap: int = 17
    ewise_cap: int = 13
    validate: bool = True

    def check(self) -> None:
        if not N_MIN <= self.n_min <= self.n_max <= N_MAX:
            raise ValueError(f"need {N_MIN} <= n_min <= n_max <= {N_MAX}, got {self.n_min}..{self.n_max}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        unknown = set(self.tests) - set(TESTS)
        if unknown or not self.tests:
            raise ValueError(f"unknown or missing tests: {sorted(unknown)}; choose from {', '.join(TESTS)}")

    def n_range(self, test: str) -> range:
        cap = {"matmul": self.matmul_cap, "ewise_mul": self.ewise_cap}.get(test, N_MAX)
        return range(self.n_min, min(self.n_max, cap) + 1)


@dataclass
class BenchRecord:
    test: str
    n: int
    runs: list[float]
    nnz_a: int
    nnz_b: int
    nnz_out: int

    @property
    def mean_seconds(self) -> float:
        return statistics.fmean(self.runs)


def _time(fn: Callable[[], Assoc], reps: int) -> tuple[list[float], Assoc]:
    result = fn()  # warm-up, not recorded
    runs = []
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(reps):
            t0 = time.perf_counter()
            result = fn()
            runs.append(time.perf_counter() - t0)
    finally:
        if gc_was_enabled:
            gc.enable()
    return runs, result


def run_benchmarks(cfg: BenchConfig) -> list[BenchRecord]:
    cfg.check()
    records = []
    wanted = [t for t in TESTS if t in cfg.tests]
    top = max(max(cfg.n_range(t), default=cfg.n_min) for t in wanted)
    for n in range(cfg.n_min, top + 1):
        active = [t for t in wanted if n in cfg.n_range(t)]
        if not active:
            continue
        data = generate_bench(n, cfg.seed)
        A = B = None
        if any(t in BINARY_TESTS for t in active):
            A = from_triples(data.rows, data.cols, 1)
            B = from_triples(data.rows2, data.cols2, 1)
        for test in active:
            if test == "ctor_num":
                fn = lambda: from_triples(data.rows, data.cols, data.num_vals)
                nnz_a, nnz_b = data.size, 0
            elif test == "ctor_str":
                fn = lambda: from_triples(data.rows, data.cols, data.str_vals)
                nnz_a, nnz_b = data.size, 0
            else:
                op = {"add": Assoc.__add__, "matmul": Assoc.__matmul__, "ewise_mul": Assoc.__mul__}[test]
                fn = lambda op=op: op(A, B)
                nnz_a, nnz_b = A.nnz, B.nnz
            runs, result = _time(fn, cfg.repetitions)
            if cfg.validate:
                check_invariants(result)
            rec = BenchRecord(test, n, runs, nnz_a, nnz_b, result.nnz)
            log.info("%-9s n=%2d mean=%.6fs nnz_out=%d", test, n, rec.mean_seconds, rec.nnz_out)
            records.append(rec)
    return sorted(records, key=lambda r: (r.test, r.n))


def check_scaling(
    records: Iterable[BenchRecord],
    factor: float = 8.0,
    tests: Iterable[str] = ("ctor_num", "ctor_str", "add"),
) -> list[str]:
    """Report every step n -> n+1 whose mean time grew by more than ``factor``."""
    by_test: dict[str, dict[int, float]] = {}
    for r in records:
        by_test.setdefault(r.test, {})[r.n] = r.mean_seconds
    problems = []
    for test in tests:
        means = by_test.get(test, {})
        for n in sorted(means):
            if n + 1 in means and means[n + 1] > factor * means[n]:
                problems.append(
                    f"{test}: mean time grew {means[n + 1] / means[n]:.1f}x from n={n} to n={n + 1} (limit {factor}x)"
                )
    return problems


def _delimiter(fmt: str) -> str:
    if fmt not in ("csv", "tsv"):
        raise ValueError(f"unknown report format {fmt!r}")
    return "," if fmt == "csv" else "\t"


def emit_report(records: list[BenchRecord], path, fmt: str = "csv") -> None:
    """Write records, sorted by (test, n); ``path`` of ``"-"`` means stdout."""
    if not records:
        raise ValueError("no records to report")
    buf = io.StringIO()
    w = csv.writer(buf, delimiter=_delimiter(fmt), lineterminator="\n")
    w.writerow(COLUMNS)
    for r in sorted(records, key=lambda r: (r.test, r.n)):
        w.writerow([r.test, r.n, repr(r.mean_seconds), ";".join(map(repr, r.runs)), r.nnz_a, r.nnz_b, r.nnz_out])
    text = buf.getvalue()
    if str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OSError(f"cannot write report {path}: {e}") from e


def read_report(path) -> list[BenchRecord]:
    with open(path, encoding="utf-8", newline="") as f:
        text = f.read()
    header = text.split("\n", 1)[0]
    delim = "\t" if "\t" in header else ","
    rows = list(csv.DictReader(io.StringIO(text), delimiter=delim))
    if not rows or set(COLUMNS) - set(rows[0]):
        raise ValueError(f"{path}: not a benchmark report")
    return [
        BenchRecord(
            test=row["test"],
            n=int(row["n"]),
            runs=[float(x) for x in row["runs"].split(";")],
            nnz_a=int(row["nnz_a"]),
            nnz_b=int(row["nnz_b"]),
            nnz_out=int(row["nnz_out"]),
        )
        for row in rows
    ]


def format_table(records: list[BenchRecord]) -> str:
    head = ("test", "n", "mean (s)", "min (s)", "max (s)", "nnz_out")
    lines = [head] + [
        (r.test, str(r.n), f"{r.mean_seconds:.6f}", f"{min(r.runs):.6f}", f"{max(r.runs):.6f}", str(r.nnz_out))
        for r in sorted(records, key=lambda r: (r.test, r.n))
    ]
    widths = [max(len(line[i]) for line in lines) for i in range(len(head))]
    return "\n".join("  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(line, widths))) for line in lines)
