"""A small immutable sparse-matrix layer (COO, CSR, CSC).

Matrices are canonical after every public operation: coordinates are
unique, entries are sorted in the layout's major order, and no stored
value equals zero. Unstored entries read as the zero of whatever semiring
an operation is run under.

Plus-times matrix products are handed to ``scipy.sparse``; products under
any other semiring use a row-wise Gustavson kernel written here.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
import scipy.sparse as sp

from .semiring import Semiring, plus_times

__all__ = [
    "SparseMatrix",
    "from_triples",
    "from_dense",
    "empty",
    "convert",
    "add",
    "elementwise_multiply",
    "matmul",
    "select",
    "scatter",
    "nonempty_rows_cols",
]

Layout = Literal["coo", "csr", "csc"]
DupRule = Literal["sum", "last", "first", "min", "max"]

INDEX = np.int64


class SparseMatrix:
    """Sparse 2-D float matrix.

    COO stores ``row``, ``col``, ``data`` sorted row-major. CSR stores
    ``indptr`` over rows plus ``col``; CSC stores ``indptr`` over columns
    plus ``row``. Unused index arrays are ``None``.
    """

    __slots__ = ("shape", "layout", "data", "row", "col", "indptr")

    def __init__(self, shape, layout, data, row=None, col=None, indptr=None):
        self.shape = (int(shape[0]), int(shape[1]))
        self.layout = layout
        self.data = data
        self.row = row
        self.col = col
        self.indptr = indptr
        for a in (data, row, col, indptr):
            if a is not None:
                a.flags.writeable = False

    @property
    def nnz(self) -> int:
        return len(self.data)

    def tocoo(self) -> SparseMatrix:
        return convert(self, "coo")

    def tocsr(self) -> SparseMatrix:
        return convert(self, "csr")

    def tocsc(self) -> SparseMatrix:
        return convert(self, "csc")

    def toarray(self, fill: float = 0.0) -> np.ndarray:
        m = self.tocoo()
        out = np.full(self.shape, fill, dtype=np.float64)
        out[m.row, m.col] = m.data
        return out

    def to_scipy(self) -> sp.csr_matrix:
        m = self.tocsr()
        return sp.csr_matrix((m.data, m.col, m.indptr), shape=self.shape)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        a, b = self.tocoo(), other.tocoo()
        return (
            a.shape == b.shape
            and np.array_equal(a.row, b.row)
            and np.array_equal(a.col, b.col)
            and np.array_equal(a.data, b.data)
        )

    __hash__ = None

    def __repr__(self):
        return f"SparseMatrix(shape={self.shape}, layout={self.layout!r}, nnz={self.nnz})"


def _coo(shape, row, col, data) -> SparseMatrix:
    return SparseMatrix(shape, "coo", data, row=row, col=col)


def empty(nrows: int = 0, ncols: int = 0) -> SparseMatrix:
    z = np.empty(0, dtype=INDEX)
    return _coo((nrows, ncols), z, z.copy(), np.empty(0, dtype=np.float64))


def _reduce_groups(vals: np.ndarray, starts: np.ndarray, rule: DupRule) -> np.ndarray:
    if rule == "sum":
        return np.add.reduceat(vals, starts)
    if rule == "min":
        return np.minimum.reduceat(vals, starts)
    if rule == "max":
        return np.maximum.reduceat(vals, starts)
    if rule == "first":
        return vals[starts]
    if rule == "last":
        ends = np.append(starts[1:], len(vals)) - 1
        return vals[ends]
    raise ValueError(f"unknown dup_rule {rule!r}")


def _canonical(shape, row, col, data, rule: DupRule = "sum", prune=0.0) -> SparseMatrix:
    """Sort row-major, combine duplicates, drop entries equal to ``prune``."""
    if len(data):
        lin = row * shape[1] + col
        order = np.argsort(lin, kind="stable")
        lin, data = lin[order], data[order]
        if len(lin) > 1 and not np.all(lin[1:] != lin[:-1]):
            starts = np.flatnonzero(np.r_[True, lin[1:] != lin[:-1]])
            data = _reduce_groups(data, starts, rule)
            lin = lin[starts]
        keep = data != prune
        if not keep.all():
            lin, data = lin[keep], data[keep]
        row, col = np.divmod(lin, shape[1]) if shape[1] else (lin, lin)
    return _coo(shape, row.astype(INDEX, copy=False), col.astype(INDEX, copy=False), data)


def from_triples(nrows, ncols, rows, cols, vals, dup_rule: DupRule = "sum") -> SparseMatrix:
    """Assemble a canonical COO matrix; duplicates combine per ``dup_rule``.

    ``last`` and ``first`` refer to input order.
    """
    rows = np.asarray(rows, dtype=INDEX).reshape(-1)
    cols = np.asarray(cols, dtype=INDEX).reshape(-1)
    vals = np.asarray(vals, dtype=np.float64).reshape(-1)
    if not (len(rows) == len(cols) == len(vals)):
        raise ValueError(f"length mismatch: {len(rows)} rows, {len(cols)} cols, {len(vals)} values")
    if nrows < 0 or ncols < 0:
        raise ValueError("shape must be nonnegative")
    if len(rows) and (rows.min() < 0 or rows.max() >= nrows or cols.min() < 0 or cols.max() >= ncols):
        raise IndexError(f"index out of range for shape ({nrows}, {ncols})")
    return _canonical((nrows, ncols), rows, cols, vals, dup_rule)


def from_dense(a) -> SparseMatrix:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    r, c = np.nonzero(a)
    return _coo(a.shape, r.astype(INDEX), c.astype(INDEX), a[r, c])


def _indptr(major: np.ndarray, n: int) -> np.ndarray:
    return np.r_[0, np.cumsum(np.bincount(major, minlength=n))].astype(INDEX)


def convert(m: SparseMatrix, target: Layout) -> SparseMatrix:
    if target not in ("coo", "csr", "csc"):
        raise ValueError(f"unknown layout {target!r}")
    if m.layout == target:
        return m
    nrows, ncols = m.shape
    # go through COO
    if m.layout == "csr":
        row = np.repeat(np.arange(nrows, dtype=INDEX), np.diff(m.indptr))
        coo = _coo(m.shape, row, m.col, m.data)
    elif m.layout == "csc":
        col = np.repeat(np.arange(ncols, dtype=INDEX), np.diff(m.indptr))
        order = np.lexsort((col, m.row))
        coo = _coo(m.shape, m.row[order], col[order], m.data[order])
    else:
        coo = m
    if target == "coo":
        return coo
    if target == "csr":
        return SparseMatrix(m.shape, "csr", coo.data, col=coo.col, indptr=_indptr(coo.row, nrows))
    order = np.argsort(coo.col, kind="stable")
    return SparseMatrix(m.shape, "csc", coo.data[order], row=coo.row[order], indptr=_indptr(coo.col[order], ncols))


def _same_shape(a: SparseMatrix, b: SparseMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def add(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    _same_shape(a, b)
    a, b = a.tocoo(), b.tocoo()
    if not b.nnz:
        return a
    if not a.nnz:
        return b
    return _canonical(
        a.shape,
        np.concatenate([a.row, b.row]),
        np.concatenate([a.col, b.col]),
        np.concatenate([a.data, b.data]),
    )


def elementwise_multiply(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    _same_shape(a, b)
    a, b = a.tocoo(), b.tocoo()
    ncols = a.shape[1]
    lin_a = a.row * ncols + a.col
    lin_b = b.row * ncols + b.col
    lin, ia, ib = np.intersect1d(lin_a, lin_b, assume_unique=True, return_indices=True)
    data = a.data[ia] * b.data[ib]
    keep = data != 0.0
    lin, data = lin[keep], data[keep]
    row, col = np.divmod(lin, ncols) if ncols else (lin, lin)
    return _coo(a.shape, row.astype(INDEX), col.astype(INDEX), data)


def matmul(a: SparseMatrix, b: SparseMatrix, ring: Semiring | None = None) -> SparseMatrix:
    """Semiring matrix product; results equal to ``ring.zero`` are dropped."""
    ring = ring or plus_times()
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"inner dimension mismatch: {a.shape} @ {b.shape}")
    shape = (a.shape[0], b.shape[1])
    if not a.nnz or not b.nnz:
        return empty(*shape)
    if ring is plus_times():
        c = (a.to_scipy() @ b.to_scipy()).tocoo()
        return _canonical(shape, c.row.astype(INDEX), c.col.astype(INDEX), c.data.astype(np.float64))
    return _gustavson(a.tocsr(), b.tocsr(), ring, shape)


def _gustavson(a: SparseMatrix, b: SparseMatrix, ring: Semiring, shape) -> SparseMatrix:
    reduce_at = getattr(ring.add, "at", None)
    zero = ring.zero
    scratch = np.full(shape[1], zero, dtype=np.float64)
    touched = np.zeros(shape[1], dtype=bool)
    out_rows, out_cols, out_vals = [], [], []
    for i in range(shape[0]):
        lo, hi = a.indptr[i], a.indptr[i + 1]
        if lo == hi:
            continue
        ks, avals = a.col[lo:hi], a.data[lo:hi]
        starts, stops = b.indptr[ks], b.indptr[ks + 1]
        counts = stops - starts
        if not counts.sum():
            continue
        idx = np.concatenate([np.arange(s, e) for s, e in zip(starts, stops)])
        cols = b.col[idx]
        prods = np.asarray(ring.mul(np.repeat(avals, counts), b.data[idx]), dtype=np.float64)
        if reduce_at is not None:
            reduce_at(scratch, cols, prods)
        else:
            for j, p in zip(cols.tolist(), prods.tolist()):
                scratch[j] = ring.add(scratch[j], p)
        touched[cols] = True
        hit = np.flatnonzero(touched)
        vals = scratch[hit]
        keep = vals != zero
        out_rows.append(np.full(int(keep.sum()), i, dtype=INDEX))
        out_cols.append(hit[keep].astype(INDEX))
        out_vals.append(vals[keep])
        scratch[hit] = zero
        touched[hit] = False
    if not out_rows:
        return empty(*shape)
    return _coo(shape, np.concatenate(out_rows), np.concatenate(out_cols), np.concatenate(out_vals))


def _index_vector(index, n: int, axis: str) -> np.ndarray | None:
    if index is None or (isinstance(index, slice) and index == slice(None)):
        return None
    idx = np.asarray(index, dtype=INDEX).reshape(-1)
    if len(idx) and (idx.min() < 0 or idx.max() >= n):
        raise IndexError(f"{axis} index out of range for length {n}")
    if len(idx) > 1 and not np.all(idx[1:] > idx[:-1]):
        raise ValueError(f"{axis} index must be strictly increasing")
    return idx


def select(m: SparseMatrix, row_index=None, col_index=None) -> SparseMatrix:
    """Submatrix ``m[row_index, col_index]``; ``None`` selects everything."""
    ri = _index_vector(row_index, m.shape[0], "row")
    ci = _index_vector(col_index, m.shape[1], "column")
    m = m.tocoo()
    row, col, data = m.row, m.col, m.data
    nrows = m.shape[0] if ri is None else len(ri)
    ncols = m.shape[1] if ci is None else len(ci)
    keep = np.ones(len(data), dtype=bool)
    if ri is not None:
        rmap = np.full(m.shape[0], -1, dtype=INDEX)
        rmap[ri] = np.arange(len(ri), dtype=INDEX)
        row = rmap[row]
        keep &= row >= 0
    if ci is not None:
        cmap = np.full(m.shape[1], -1, dtype=INDEX)
        cmap[ci] = np.arange(len(ci), dtype=INDEX)
        col = cmap[col]
        keep &= col >= 0
    # increasing maps keep row-major order
    return _coo((nrows, ncols), row[keep], col[keep], data[keep])


def scatter(m: SparseMatrix, shape, row_targets=None, col_targets=None) -> SparseMatrix:
    """Place ``m`` into a larger zero matrix: row i goes to ``row_targets[i]``."""
    nrows, ncols = int(shape[0]), int(shape[1])
    m = m.tocoo()
    rt = _index_vector(row_targets, nrows, "row")
    ct = _index_vector(col_targets, ncols, "column")
    if rt is None and m.shape[0] != nrows or rt is not None and len(rt) != m.shape[0]:
        raise ValueError("row targets do not match the matrix")
    if ct is None and m.shape[1] != ncols or ct is not None and len(ct) != m.shape[1]:
        raise ValueError("column targets do not match the matrix")
    row = m.row if rt is None else rt[m.row]
    col = m.col if ct is None else ct[m.col]
    return _coo((nrows, ncols), row, col, m.data)


def nonempty_rows_cols(m: SparseMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Boolean masks of rows and columns holding at least one entry."""
    csr_rows = m.tocsr().indptr
    csc_cols = m.tocsc().indptr
    return csr_rows[:-1] < csr_rows[1:], csc_cols[:-1] < csc_cols[1:]
