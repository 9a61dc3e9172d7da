"""Triple files and benchmark data generation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .assoc import Aggregate, Assoc, from_triples

__all__ = [
    "TripleFormatError",
    "format_number",
    "write_triples",
    "read_triples",
    "BenchDataset",
    "generate_bench",
    "BENCH_FILES",
    "N_MIN",
    "N_MAX",
]

N_MIN, N_MAX = 5, 18

BENCH_FILES = {
    "rows": "rows.txt",
    "rows2": "rows2.txt",
    "cols": "cols.txt",
    "cols2": "cols2.txt",
    "num_vals": "num_vals.txt",
    "str_vals": "string_vals.txt",
}


class TripleFormatError(ValueError):
    pass


def format_number(x: float) -> str:
    """Integral values print as integers, others as the shortest exact repr."""
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def _field(x, delimiter: str) -> str:
    s = x if isinstance(x, str) else format_number(x)
    if delimiter in s or "\n" in s or "\r" in s:
        raise TripleFormatError(f"field {s!r} contains the delimiter or a line break")
    return s


def write_triples(a: Assoc, path, delimiter: str = "\t") -> int:
    """Write one ``row<TAB>col<TAB>value`` line per stored entry."""
    rows, cols, vals = a.triples()
    lines = [
        f"{_field(r, delimiter)}{delimiter}{_field(c, delimiter)}{delimiter}{_field(v, delimiter)}\n"
        for r, c, v in zip(rows, cols, vals)
    ]
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.writelines(lines)
    except OSError as e:
        raise OSError(f"cannot write triples to {path}: {e}") from e
    return len(lines)


def _parse_number(s: str):
    try:
        x = float(s)
    except ValueError:
        return None
    return x if math.isfinite(x) else None


def read_triples(path, delimiter: str = "\t", aggregate: Aggregate = "min", numeric_keys: bool = False) -> Assoc:
    """Read a triple file into an array.

    Values become numbers when every value field parses as a finite number,
    otherwise all values are strings. Keys stay strings unless
    ``numeric_keys`` is set, in which case number-like keys become numbers.
    """
    rows, cols, vals = [], [], []
    try:
        with open(path, encoding="utf-8", newline="") as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n").rstrip("\r")
                parts = line.split(delimiter)
                if len(parts) != 3:
                    raise TripleFormatError(f"{path}:{lineno}: expected 3 fields, got {len(parts)}")
                rows.append(parts[0])
                cols.append(parts[1])
                vals.append(parts[2])
    except OSError as e:
        raise OSError(f"cannot read triples from {path}: {e}") from e
    nums = [_parse_number(v) for v in vals]
    if vals and all(x is not None for x in nums):
        vals = nums
    if numeric_keys:
        rows = [_key(k) for k in rows]
        cols = [_key(k) for k in cols]
    return from_triples(rows, cols, vals, aggregate)


def _key(s: str):
    x = _parse_number(s)
    return s if x is None else x


@dataclass(frozen=True)
class BenchDataset:
    """Six sequences of ``8 * 2**n`` elements each.

    Keys are integers in ``[0, 2**n)`` written as strings, ``num_vals`` are
    integers in ``[0, 100]`` and ``str_vals`` are lowercase strings of
    length 8.
    """

    n: int
    seed: int
    rows: np.ndarray
    rows2: np.ndarray
    cols: np.ndarray
    cols2: np.ndarray
    num_vals: np.ndarray
    str_vals: np.ndarray

    @property
    def size(self) -> int:
        return 8 * 2**self.n

    def save(self, out_dir) -> list[Path]:
        """One element per line, one file per sequence."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for attr, name in BENCH_FILES.items():
            p = out / name
            p.write_text("".join(f"{x}\n" for x in getattr(self, attr).tolist()), encoding="utf-8")
            written.append(p)
        return written

    @classmethod
    def load(cls, in_dir, n: int, seed: int = -1) -> BenchDataset:
        src = Path(in_dir)
        seqs = {}
        for attr, name in BENCH_FILES.items():
            lines = (src / name).read_text(encoding="utf-8").splitlines()
            seqs[attr] = np.array(lines, dtype=str)
        seqs["num_vals"] = seqs["num_vals"].astype(np.int64)
        return cls(n=n, seed=seed, **seqs)


def generate_bench(n: int, seed: int = 0) -> BenchDataset:
    """Deterministic benchmark data for exponent ``n``."""
    if not N_MIN <= n <= N_MAX:
        raise ValueError(f"n must be in [{N_MIN}, {N_MAX}], got {n}")
    rng = np.random.default_rng([seed, n])
    size = 8 * 2**n

    def keys():
        return rng.integers(0, 2**n, size=size).astype(str)

    rows, rows2, cols, cols2 = keys(), keys(), keys(), keys()
    num_vals = rng.integers(0, 101, size=size)
    letters = rng.integers(ord("a"), ord("z") + 1, size=(size, 8), dtype=np.uint32)
    str_vals = letters.view("<U8").reshape(size)
    return BenchDataset(n, seed, rows, rows2, cols, cols2, num_vals, str_vals)
