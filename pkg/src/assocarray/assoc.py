"""Associative arrays: sparse 2-D arrays keyed by sorted strings and numbers.

An :class:`Assoc` is stored as four attributes:

``row``, ``col``
    sorted unique row and column keys (numpy arrays, see
    :func:`assocarray.sorted_sets.as_keys`).
``val``
    the float ``1.0`` for numeric arrays, otherwise a sorted array of the
    unique nonempty string values.
``adj``
    a canonical COO :class:`~assocarray.sparse.SparseMatrix` of shape
    ``(len(row), len(col))``. Numeric arrays store values directly; string
    arrays store 1-based pointers into ``val``.

Every row and column of ``adj`` holds at least one entry. The empty value
is ``0.0`` for numbers and ``""`` for strings; it is never stored. The
empty array is numeric and is accepted anywhere a string array is.

Arrays are immutable. Every operation returns a new array.
"""

from __future__ import annotations

import operator
from numbers import Real
from typing import Any, Callable, Union

import numpy as np

from . import sparse
from .semiring import Semiring, plus_times
from .sorted_sets import as_keys, key_order, sorted_intersection, sorted_union, sorted_unique
from .sparse import SparseMatrix

__all__ = [
    "Assoc",
    "ByKey",
    "InvariantError",
    "from_triples",
    "from_adjacency",
    "check_invariants",
]

NUMERIC = 1.0

Key = Union[str, float, int]
Aggregate = Union[str, Callable[[Any, Any], Any], None]


class InvariantError(AssertionError):
    """An array violates the storage invariants."""


class ByKey:
    """Selector marker: treat the wrapped value(s) as keys, never positions.

    ``A[ByKey(5), :]`` selects the row whose key is the number 5, while
    ``A[5, :]`` selects the sixth row.
    """

    __slots__ = ("keys", "single")

    def __init__(self, keys):
        self.single = isinstance(keys, (str, Real, np.number))
        self.keys = [keys] if self.single else list(keys)
        for k in self.keys:
            key_order(k)

    def __repr__(self):
        return f"ByKey({self.keys[0] if self.single else self.keys!r})"


# aggregate normalization --------------------------------------------------

_RULES = {
    "min": "min",
    "max": "max",
    "sum": "sum",
    "add": "sum",
    "first": "first",
    "last": "last",
}
_RULE_FUNCS = {min: "min", max: "max", np.minimum: "min", np.maximum: "max", np.fmin: "min", np.fmax: "max"}
_NUMERIC_ONLY = {operator.add: "sum", np.add: "sum"}


def _concat(a, b):
    return a + b


def _rule(aggregate: Aggregate, numeric: bool):
    """Return a vectorizable rule name or a binary callable."""
    if aggregate is None:
        return "min"
    if isinstance(aggregate, str):
        if aggregate == "concat":
            if numeric:
                raise TypeError("concat aggregation needs string values")
            return _concat
        if aggregate == "sum" and not numeric:
            return _concat
        try:
            return _RULES[aggregate]
        except KeyError:
            raise ValueError(f"unknown aggregate {aggregate!r}") from None
    if aggregate in _RULE_FUNCS:
        return _RULE_FUNCS[aggregate]
    if numeric and aggregate in _NUMERIC_ONLY:
        return _NUMERIC_ONLY[aggregate]
    if not callable(aggregate):
        raise TypeError("aggregate must be a name or a binary callable")
    return aggregate


def _fold_groups(lin: np.ndarray, vals: list, func) -> tuple[np.ndarray, list]:
    """Left-fold ``vals`` sharing a linear index, in input order."""
    order = np.argsort(lin, kind="stable")
    lin_sorted = lin[order]
    out_lin, out_vals = [], []
    i, n = 0, len(order)
    order_l = order.tolist()
    lin_l = lin_sorted.tolist()
    while i < n:
        j = i
        acc = vals[order_l[i]]
        while j + 1 < n and lin_l[j + 1] == lin_l[i]:
            j += 1
            acc = func(acc, vals[order_l[j]])
        out_lin.append(lin_l[i])
        out_vals.append(acc)
        i = j + 1
    return np.array(out_lin, dtype=np.int64), out_vals


# value helpers --------------------------------------------------------------

def _is_scalar(x) -> bool:
    return isinstance(x, (str, Real, np.number, np.str_)) or (isinstance(x, np.ndarray) and x.ndim == 0)


def _value_kind(vals: np.ndarray) -> str:
    if len(vals) == 0:
        return "num"
    kind = vals.dtype.kind
    if kind in "biuf":
        return "num"
    if kind == "U":
        return "str"
    if kind == "O":
        n_str = sum(isinstance(v, str) for v in vals.tolist())
        if n_str == len(vals):
            return "str"
        if n_str == 0:
            return "num"
    raise TypeError("values must be all numeric or all strings")


def _broadcast(rows, cols, vals):
    args = [[x] if _is_scalar(x) else x for x in (rows, cols, vals)]
    lengths = {len(a) for a in args}
    long = lengths - {1}
    if len(long) > 1:
        raise ValueError(f"cannot broadcast sequences of lengths {sorted(long)}")
    n = long.pop() if long else 1
    return [list(a) * n if len(a) == 1 and n != 1 else a for a in args]


def _as_values(vals) -> np.ndarray:
    if isinstance(vals, np.ndarray):
        vals = vals.reshape(-1)
        if vals.dtype.kind != "O":
            return vals
        vals = vals.tolist()
    vals = list(vals)
    n_str = sum(isinstance(v, str) for v in vals)
    if n_str == len(vals):
        return np.array(vals, dtype=str)
    if n_str == 0 and all(isinstance(v, (Real, np.number)) for v in vals):
        return np.array(vals, dtype=np.float64)
    raise TypeError("values must be all numeric or all strings")


def _display_key(k):
    if isinstance(k, float) and k.is_integer() and abs(k) < 2**53:
        return int(k)
    return k


# ---------------------------------------------------------------------------

class Assoc:
    """An associative array.

    ``Assoc(row, col, val, aggregate=min)`` builds an array from triples.
    Any of ``row``, ``col``, ``val`` may be a single value broadcast to the
    length of the others. Collisions fold with ``aggregate`` in input order;
    it may be ``"min"``, ``"max"``, ``"sum"``, ``"first"``, ``"last"``,
    ``"concat"`` or any binary callable.

    ``Assoc(row, col, val, adj=matrix)`` builds an array from an adjacency
    matrix instead; see :func:`from_adjacency`.
    """

    __slots__ = ("row", "col", "val", "adj")

    def __init__(self, row=(), col=(), val=(), aggregate: Aggregate = None, *, adj=None):
        if adj is not None:
            made = from_adjacency(row, col, val, adj)
        else:
            made = from_triples(row, col, val, aggregate)
        for name in self.__slots__:
            object.__setattr__(self, name, getattr(made, name))

    @classmethod
    def _make(cls, row, col, val, adj: SparseMatrix) -> Assoc:
        self = object.__new__(cls)
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "col", col)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "adj", adj)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Assoc is immutable")

    # basic properties

    @property
    def is_numeric(self) -> bool:
        return isinstance(self.val, float)

    @property
    def is_empty(self) -> bool:
        return self.adj.nnz == 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.adj.shape

    @property
    def nnz(self) -> int:
        return self.adj.nnz

    @property
    def empty_value(self):
        return 0.0 if self.is_numeric else ""

    def values(self) -> np.ndarray:
        """Stored values in row-major order."""
        if self.is_numeric:
            return self.adj.data
        return self.val[self.adj.data.astype(np.intp) - 1]

    def triples(self) -> tuple[list, list, list]:
        """``(rows, cols, vals)`` lists in row-major order.

        Integral number keys come back as ``int``.
        """
        rows = [_display_key(k) for k in self.row[self.adj.row].tolist()]
        cols = [_display_key(k) for k in self.col[self.adj.col].tolist()]
        return rows, cols, self.values().tolist()

    def to_dict(self) -> dict:
        r, c, v = self.triples()
        return {(a, b): x for a, b, x in zip(r, c, v)}

    # equality & display

    def __eq__(self, other):
        if not isinstance(other, Assoc):
            return NotImplemented
        if self.is_numeric != other.is_numeric:
            return False
        if not self.is_numeric and not np.array_equal(self.val, other.val):
            return False
        return (
            _keys_equal(self.row, other.row)
            and _keys_equal(self.col, other.col)
            and self.adj == other.adj
        )

    __hash__ = None

    def __repr__(self):
        kind = "numeric" if self.is_numeric else "string"
        return f"Assoc({self.shape[0]}x{self.shape[1]}, nnz={self.nnz}, {kind})"

    def __str__(self):
        if self.is_empty:
            return "Assoc(empty)"
        grid = [[""] + [str(_display_key(c)) for c in self.col.tolist()]]
        body = [[str(_display_key(r))] + [""] * len(self.col) for r in self.row.tolist()]
        for i, j, v in zip(self.adj.row.tolist(), self.adj.col.tolist(), self.values().tolist()):
            body[i][j + 1] = str(_display_key(v) if isinstance(v, float) else v)
        grid += body
        widths = [max(len(line[k]) for line in grid) for k in range(len(grid[0]))]
        return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in grid)

    # algebra

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return multiply_elementwise(self, other)

    def __matmul__(self, other):
        return array_product(self, other)

    def __getitem__(self, item):
        if not isinstance(item, tuple) or len(item) != 2:
            raise TypeError("index with A[rows, cols]")
        return get(self, item[0], item[1])

    def get(self, row_sel, col_sel, delimiter: str = ","):
        return get(self, row_sel, col_sel, delimiter)

    def set(self, row_key, col_key, value) -> Assoc:
        return set_value(self, row_key, col_key, value)

    def logical(self) -> Assoc:
        return logical(self)

    def condense(self) -> Assoc:
        return condense(self)

    def transpose(self) -> Assoc:
        return transpose(self)

    @property
    def T(self) -> Assoc:
        return transpose(self)

    def combine(self, other, op: Aggregate) -> Assoc:
        return combine(self, other, op)

    def min(self, other) -> Assoc:
        return elementwise_min(self, other)

    def max(self, other) -> Assoc:
        return elementwise_max(self, other)

    def matmul(self, other, ring: Semiring | None = None) -> Assoc:
        return array_product(self, other, ring)


def _keys_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if len(a) != len(b):
        return False
    if a.dtype.kind != b.dtype.kind:
        return [key_order(x) for x in a.tolist()] == [key_order(x) for x in b.tolist()]
    return bool(np.array_equal(a, b))


def _empty() -> Assoc:
    return Assoc._make(as_keys([]), as_keys([]), NUMERIC, sparse.empty())


# construction ---------------------------------------------------------------

def from_triples(rows, cols, vals, aggregate: Aggregate = None) -> Assoc:
    """Build an array from ``(row, col, value)`` triples.

    Cells whose folded value is empty (``0.0`` or ``""``) are dropped.
    """
    rows, cols, vals = _broadcast(rows, cols, vals)
    vals = _as_values(vals)
    if not len(vals):
        return _empty()
    kind = _value_kind(vals)
    row_keys, r_pos = sorted_unique(rows)
    col_keys, c_pos = sorted_unique(cols)
    shape = (len(row_keys), len(col_keys))
    rule = _rule(aggregate, kind == "num")

    if kind == "num":
        data = vals.astype(np.float64)
        if callable(rule):
            lin, folded = _fold_groups(r_pos * shape[1] + c_pos, data.tolist(), rule)
            r_pos, c_pos = np.divmod(lin, shape[1])
            data, rule = np.array(folded, dtype=np.float64), "first"
        adj = sparse.from_triples(*shape, r_pos, c_pos, data, rule)
        return condense(Assoc._make(row_keys, col_keys, NUMERIC, adj))

    strs = vals.astype(str)
    if callable(rule):
        lin, folded = _fold_groups(r_pos * shape[1] + c_pos, strs.tolist(), rule)
        r_pos, c_pos = np.divmod(lin, shape[1])
        strs, rule = np.array(folded, dtype=str), "first"
    pool, ptr = sorted_unique(strs)
    adj = sparse.from_triples(*shape, r_pos, c_pos, ptr + 1.0, rule)
    return _compact_strings(row_keys, col_keys, pool, adj)


def _compact_strings(row_keys, col_keys, pool: np.ndarray, adj: SparseMatrix) -> Assoc:
    """Drop pointers to ``""``, shrink the pool to referenced values, condense."""
    adj = adj.tocoo()
    ptr = adj.data.astype(np.intp) - 1
    keep = pool[ptr] != ""
    if not keep.all():
        adj = sparse._coo(adj.shape, adj.row[keep], adj.col[keep], adj.data[keep])
        ptr = ptr[keep]
    if not len(ptr):
        return _empty()
    used, new_ptr = np.unique(ptr, return_inverse=True)
    adj = sparse._coo(adj.shape, adj.row, adj.col, new_ptr.reshape(-1).astype(np.float64) + 1.0)
    return condense(Assoc._make(row_keys, col_keys, pool[used], adj))


def from_adjacency(rows, cols, vals, adj) -> Assoc:
    """Build an array from key lists and an adjacency matrix.

    The sorted unique ``rows`` and ``cols`` are cut down to ``adj``'s shape.
    If ``vals`` is a float the entries of ``adj`` are the values; otherwise
    they are 1-based pointers into the sorted unique ``vals``.
    """
    if not isinstance(adj, SparseMatrix):
        adj = sparse.from_dense(adj) if not hasattr(adj, "tocoo") else _from_scipy(adj)
    adj = adj.tocoo()
    row_keys, _ = sorted_unique(rows)
    col_keys, _ = sorted_unique(cols)
    nrows, ncols = adj.shape
    if len(row_keys) < nrows or len(col_keys) < ncols:
        raise ValueError(
            f"adjacency is {nrows}x{ncols} but only {len(row_keys)} row and {len(col_keys)} column keys given"
        )
    row_keys, col_keys = row_keys[:nrows], col_keys[:ncols]
    if isinstance(vals, float):
        return condense(Assoc._make(row_keys, col_keys, NUMERIC, adj))
    pool, _ = sorted_unique(np.asarray(list(vals), dtype=str) if not isinstance(vals, np.ndarray) else vals.astype(str))
    d = adj.data
    if len(d) and (not np.all(d == np.round(d)) or d.min() < 1 or d.max() > len(pool)):
        raise ValueError(f"adjacency entries must be integer pointers in 1..{len(pool)}")
    return _compact_strings(row_keys, col_keys, pool, adj)


def _from_scipy(m) -> SparseMatrix:
    c = m.tocoo()
    return sparse.from_triples(c.shape[0], c.shape[1], c.row, c.col, c.data, "sum")


def check_invariants(a: Assoc) -> None:
    """Raise :class:`InvariantError` if ``a`` breaks a storage invariant."""
    adj = a.adj
    if adj.layout != "coo":
        raise InvariantError("adjacency is not COO")
    if adj.shape != (len(a.row), len(a.col)):
        raise InvariantError(f"adjacency shape {adj.shape} does not match keys")
    for name, keys in (("row", a.row), ("col", a.col)):
        order = [key_order(k) for k in keys.tolist()]
        if any(not x < y for x, y in zip(order, order[1:])):
            raise InvariantError(f"{name} keys not strictly sorted")
    if adj.nnz and np.any(adj.data == 0.0):
        raise InvariantError("stored zero in adjacency")
    if sparse._canonical(adj.shape, adj.row, adj.col, adj.data, "first") != adj:
        raise InvariantError("adjacency is not canonical")
    rmask, cmask = sparse.nonempty_rows_cols(adj)
    if not rmask.all() or not cmask.all():
        raise InvariantError("array is not condensed")
    if a.is_numeric:
        if a.val != NUMERIC:
            raise InvariantError("numeric flag must be 1.0")
        return
    pool = a.val
    if len(pool) and (np.any(pool == "") or not np.all(pool[:-1] < pool[1:])):
        raise InvariantError("string pool not sorted, unique and nonempty")
    ptr = adj.data
    if not np.all(ptr == np.round(ptr)) or ptr.min() < 1 or ptr.max() > len(pool):
        raise InvariantError("pointer outside the string pool")
    if len(np.unique(ptr)) != len(pool):
        raise InvariantError("string pool has unreferenced values")


# structural operations ------------------------------------------------------

def condense(a: Assoc) -> Assoc:
    """Drop rows and columns with no stored entry."""
    good_rows, good_cols = sparse.nonempty_rows_cols(a.adj)
    if good_rows.all() and good_cols.all():
        return a
    if not good_rows.any():
        return _empty()
    adj = sparse.select(a.adj, np.flatnonzero(good_rows), np.flatnonzero(good_cols))
    return Assoc._make(a.row[good_rows], a.col[good_cols], a.val, adj)


def logical(a: Assoc) -> Assoc:
    """Replace every stored value with numeric ``1.0``."""
    if a.is_numeric and np.all(a.adj.data == 1.0):
        return a
    adj = sparse._coo(a.adj.shape, a.adj.row, a.adj.col, np.ones(a.nnz))
    return Assoc._make(a.row, a.col, NUMERIC, adj)


def transpose(a: Assoc) -> Assoc:
    adj = a.adj
    t = sparse._canonical((adj.shape[1], adj.shape[0]), adj.col, adj.row, adj.data, "first")
    return Assoc._make(a.col, a.row, a.val, t)


def _restrict(a: Assoc, rows=None, cols=None) -> Assoc:
    """Subarray on position vectors (``None`` keeps the axis), condensed."""
    adj = sparse.select(a.adj, rows, cols)
    row = a.row if rows is None else a.row[rows]
    col = a.col if cols is None else a.col[cols]
    if a.is_numeric:
        return condense(Assoc._make(row, col, NUMERIC, adj))
    return _compact_strings(row, col, a.val, adj)


def _check_kinds(a: Assoc, b: Assoc, what: str) -> None:
    if not a.is_empty and not b.is_empty and a.is_numeric != b.is_numeric:
        raise TypeError(f"{what} of a numeric and a string array is not defined")


def combine(a: Assoc, b: Assoc, op: Aggregate) -> Assoc:
    """Union of both supports; cells present in both fold as ``op(a, b)``."""
    _check_kinds(a, b, "combine")
    if b.is_empty:
        return a
    if a.is_empty:
        return b
    ra, ca, va = _raw_triples(a)
    rb, cb, vb = _raw_triples(b)
    return from_triples(
        _concat_keys(ra, rb), _concat_keys(ca, cb), np.concatenate([va, vb]), op
    )


def _raw_triples(a: Assoc):
    return a.row[a.adj.row], a.col[a.adj.col], a.values()


def _concat_keys(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.dtype.kind == y.dtype.kind and x.dtype.kind != "O":
        return np.concatenate([x, y])
    out = np.empty(len(x) + len(y), dtype=object)
    out[: len(x)] = x.tolist()
    out[len(x):] = y.tolist()
    return out


def elementwise_min(a: Assoc, b: Assoc) -> Assoc:
    return combine(a, b, "min")


def elementwise_max(a: Assoc, b: Assoc) -> Assoc:
    return combine(a, b, "max")


def add(a: Assoc, b: Assoc) -> Assoc:
    """Element-wise sum: numbers add, strings concatenate (``a`` first)."""
    _check_kinds(a, b, "addition")
    if b.is_empty:
        return a
    if a.is_empty:
        return b
    if not a.is_numeric:
        return combine(a, b, "concat")
    rows = sorted_union(a.row, b.row)
    cols = sorted_union(a.col, b.col)
    shape = (len(rows.merged), len(cols.merged))
    a_adj = sparse.scatter(a.adj, shape, rows.map_left, cols.map_left)
    b_adj = sparse.scatter(b.adj, shape, rows.map_right, cols.map_right)
    c_adj_pre = sparse.add(a_adj, b_adj)
    return condense(Assoc._make(rows.merged, cols.merged, NUMERIC, c_adj_pre))


def multiply_elementwise(a: Assoc, b: Assoc) -> Assoc:
    """Element-wise product on the common support.

    numeric * numeric multiplies; string * string keeps the smaller string;
    string * numeric masks ``a`` by the support of ``b``; numeric * string
    is ``a * logical(b)``.
    """
    if a.is_empty or b.is_empty:
        return _empty()
    if a.is_numeric and not b.is_numeric:
        b = logical(b)
    rows = sorted_intersection(a.row, b.row)
    cols = sorted_intersection(a.col, b.col)
    if not len(rows.merged) or not len(cols.merged):
        return _empty()
    a_adj = sparse.select(a.adj, rows.map_left, cols.map_left)
    b_adj = sparse.select(b.adj, rows.map_right, cols.map_right)
    if a.is_numeric:
        adj = sparse.elementwise_multiply(a_adj, b_adj)
        return condense(Assoc._make(rows.merged, cols.merged, NUMERIC, adj))
    # string results: find the common support, then pick values
    common = sparse.elementwise_multiply(_ones(a_adj), _ones(b_adj))
    lin_c = common.row * common.shape[1] + common.col
    a_vals = _values_at(a_adj, lin_c, a.val)
    if b.is_numeric:
        out = a_vals
    else:
        b_vals = _values_at(b_adj, lin_c, b.val)
        out = np.where(b_vals < a_vals, b_vals, a_vals)
    return from_triples(rows.merged[common.row], cols.merged[common.col], out, "first")


def _ones(m: SparseMatrix) -> SparseMatrix:
    return sparse._coo(m.shape, m.row, m.col, np.ones(m.nnz))


def _values_at(m: SparseMatrix, lin: np.ndarray, pool: np.ndarray) -> np.ndarray:
    lin_m = m.row * m.shape[1] + m.col
    pos = np.searchsorted(lin_m, lin)
    return pool[m.data[pos].astype(np.intp) - 1]


def array_product(a: Assoc, b: Assoc, ring: Semiring | None = None) -> Assoc:
    """``C(i, j) = sum_k A(i, k) * B(k, j)`` over the shared inner keys.

    String arrays are replaced by their :func:`logical` pattern first.
    Unstored cells act as the semiring zero; results equal to that zero or
    to ``0.0`` are dropped.
    """
    ring = ring or plus_times()
    if a.is_empty or b.is_empty:
        return _empty()
    if not a.is_numeric:
        a = logical(a)
    if not b.is_numeric:
        b = logical(b)
    inner = sorted_intersection(a.col, b.row)
    if not len(inner.merged):
        return _empty()
    a_adj = sparse.select(a.adj, None, inner.map_left)
    b_adj = sparse.select(b.adj, inner.map_right, None)
    c = sparse.matmul(a_adj, b_adj, ring)
    if ring.zero != 0.0 and np.any(c.data == 0.0):
        keep = c.data != 0.0
        c = sparse._coo(c.shape, c.row[keep], c.col[keep], c.data[keep])
    return condense(Assoc._make(a.row, b.col, NUMERIC, c))


# extraction & assignment ----------------------------------------------------

def _range_bounds(sel: str, delimiter: str):
    token = f"{delimiter}:{delimiter}"
    if token not in sel:
        return None
    parts = sel.split(delimiter)
    if len(parts) != 4 or parts[1] != ":" or parts[3] != "":
        raise ValueError(f"malformed key range {sel!r}; expected 'lo{delimiter}:{delimiter}hi{delimiter}'")
    return parts[0], parts[2]


def _positions_of(keys: np.ndarray, wanted: list) -> np.ndarray:
    if not len(keys) or not wanted:
        return np.empty(0, dtype=np.intp)
    if keys.dtype.kind == "O":
        where = {key_order(k): i for i, k in enumerate(keys.tolist())}
        found = [where.get(key_order(w)) for w in wanted]
        return np.unique(np.array([f for f in found if f is not None], dtype=np.intp))
    if keys.dtype.kind == "U":
        want = np.array([w for w in wanted if isinstance(w, str)], dtype=str)
    else:
        want = np.array([float(w) for w in wanted if not isinstance(w, str)], dtype=np.float64)
    if not len(want):
        return np.empty(0, dtype=np.intp)
    pos = np.searchsorted(keys, want)
    ok = pos < len(keys)
    pos, want = pos[ok], want[ok]
    return np.unique(pos[keys[pos] == want]).astype(np.intp)


def _range_positions(keys: np.ndarray, lo: str, hi: str) -> np.ndarray:
    if keys.dtype.kind == "U":
        start = np.searchsorted(keys, lo, side="left")
        stop = np.searchsorted(keys, hi, side="right")
        return np.arange(start, max(start, stop), dtype=np.intp)
    if keys.dtype.kind == "f":
        return np.empty(0, dtype=np.intp)
    klo, khi = key_order(lo), key_order(hi)
    return np.array([i for i, k in enumerate(keys.tolist()) if klo <= key_order(k) <= khi], dtype=np.intp)


def _is_position(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, (bool, np.bool_))


def _resolve(sel, keys: np.ndarray, delimiter: str):
    """Selector to ``(positions or None, single)``."""
    n = len(keys)
    if isinstance(sel, slice):
        if sel == slice(None):
            return None, False
        for end in (sel.start, sel.stop, sel.step):
            if end is not None and not _is_position(end):
                raise TypeError("slices select by position and need integer bounds")
        return np.arange(n, dtype=np.intp)[sel], False
    if isinstance(sel, str):
        if sel == ":":
            return None, False
        bounds = _range_bounds(sel, delimiter)
        if bounds is not None:
            return _range_positions(keys, *bounds), False
        return _positions_of(keys, [sel]), True
    if isinstance(sel, ByKey):
        return _positions_of(keys, sel.keys), sel.single
    if _is_position(sel):
        p = int(sel)
        if not -n <= p < n:
            raise IndexError(f"position {p} out of range for {n} keys")
        return np.array([p % n], dtype=np.intp), True
    if isinstance(sel, (Real, np.number)):
        raise TypeError("non-integer numbers are not positions; wrap numeric keys in ByKey")
    items = sel.tolist() if isinstance(sel, np.ndarray) else list(sel)
    if all(_is_position(x) for x in items):
        pos = np.array(items, dtype=np.intp)
        if len(pos) and (pos.min() < -n or pos.max() >= n):
            raise IndexError(f"position out of range for {n} keys")
        return np.unique(pos % n if n else pos), False
    if all(isinstance(x, str) for x in items):
        return _positions_of(keys, items), False
    raise TypeError("key lists must be all strings or all positions; wrap numeric keys in ByKey")


def get(a: Assoc, row_sel, col_sel, delimiter: str = ","):
    """Extract a subarray, or a single value when both selectors are single.

    Selectors: ``:`` or ``slice(None)`` (all); a string key; a list of
    string keys; a key range ``"lo,:,hi,"`` (inclusive at both ends); an
    integer position, list of positions, or position slice; or
    :class:`ByKey` for keys of any kind.
    """
    rows, single_r = _resolve(row_sel, a.row, delimiter)
    cols, single_c = _resolve(col_sel, a.col, delimiter)
    if single_r and single_c:
        if not len(rows) or not len(cols):
            return a.empty_value
        sub = sparse.select(a.adj, rows, cols)
        if not sub.nnz:
            return a.empty_value
        v = sub.data[0]
        return float(v) if a.is_numeric else str(a.val[int(v) - 1])
    if rows is None and cols is None:
        return a
    if (rows is not None and not len(rows)) or (cols is not None and not len(cols)):
        return _empty()
    return _restrict(a, rows, cols)


def set_value(a: Assoc, row_key, col_key, value) -> Assoc:
    """Copy of ``a`` with one cell replaced; an empty value deletes the cell."""
    is_str = isinstance(value, str)
    if not is_str and not isinstance(value, (Real, np.number)):
        raise TypeError("value must be a number or a string")
    if not a.is_empty and a.is_numeric == is_str:
        raise TypeError("value kind does not match the array")
    key_order(row_key)
    key_order(col_key)
    if a.is_empty:
        return from_triples([row_key], [col_key], [value], "last")
    r, c, v = _raw_triples(a)
    return from_triples(
        _concat_keys(r, as_keys([row_key])),
        _concat_keys(c, as_keys([col_key])),
        np.append(v, value if is_str else float(value)),
        "last",
    )
