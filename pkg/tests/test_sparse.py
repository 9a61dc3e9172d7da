import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assocarray import sparse
from assocarray.semiring import max_min, max_plus
from oracles import dense_matmul, max_plus_mul


def rand_dense(rng, n, m, density, integer=True):
    vals = rng.integers(-9, 10, size=(n, m)).astype(float) if integer else rng.normal(size=(n, m))
    return np.where(rng.random((n, m)) < density, vals, 0.0)


def test_from_triples_examples():
    m = sparse.from_triples(2, 2, [0, 1], [0, 1], [1.0, 2.0])
    assert m.toarray().tolist() == [[1.0, 0.0], [0.0, 2.0]]
    m = sparse.from_triples(1, 1, [0, 0], [0, 0], [3.0, 4.0])
    assert m.toarray().tolist() == [[3.0 + 4.0]]
    m = sparse.from_triples(1, 1, [0], [0], [0.0])
    assert m.nnz == 0


@pytest.mark.parametrize("rule, want", [("sum", 9.0), ("min", 1.0), ("max", 5.0), ("first", 3.0), ("last", 1.0)])
def test_dup_rules(rule, want):
    m = sparse.from_triples(2, 2, [1, 1, 1], [0, 0, 0], [3.0, 5.0, 1.0], rule)
    assert m.toarray()[1, 0] == want


def test_from_triples_errors():
    with pytest.raises(IndexError):
        sparse.from_triples(1, 1, [1], [0], [1.0])
    with pytest.raises(ValueError):
        sparse.from_triples(2, 2, [0, 1], [0], [1.0, 2.0])


def test_convert_round_trip(rng):
    d = rand_dense(rng, 50, 50, 0.1)
    m = sparse.from_dense(d)
    for layout in ("csr", "csc"):
        c = sparse.convert(m, layout)
        assert c.layout == layout
        assert np.array_equal(c.toarray(), d)
        back = sparse.convert(c, "coo")
        assert np.array_equal(back.row, m.row) and np.array_equal(back.col, m.col)
        assert np.array_equal(back.data, m.data)
    csr = m.tocsr()
    assert csr.indptr[0] == 0 and csr.indptr[-1] == m.nnz and np.all(np.diff(csr.indptr) >= 0)


def test_convert_trivial():
    e = sparse.empty(3, 4)
    for layout in ("coo", "csr", "csc"):
        assert sparse.convert(e, layout).nnz == 0
    one = sparse.from_dense([[5.0]])
    for layout in ("coo", "csr", "csc"):
        assert sparse.convert(one, layout).toarray().tolist() == [[5.0]]


def test_add_examples(rng):
    a = sparse.from_dense(rand_dense(rng, 10, 10, 0.3))
    assert sparse.add(a, sparse.empty(10, 10)) == a
    assert sparse.add(sparse.from_dense([[1.0]]), sparse.from_dense([[-1.0]])).nnz == 0
    da, db = rand_dense(rng, 100, 100, 0.1), rand_dense(rng, 100, 100, 0.1)
    assert np.array_equal(sparse.add(sparse.from_dense(da), sparse.from_dense(db)).toarray(), da + db)
    with pytest.raises(ValueError):
        sparse.add(sparse.empty(1, 2), sparse.empty(2, 1))


def test_elementwise_examples(rng):
    da = rand_dense(rng, 30, 30, 0.3)
    a = sparse.from_dense(da)
    assert sparse.elementwise_multiply(a, sparse.empty(30, 30)).nnz == 0
    pattern = sparse.from_dense((da != 0).astype(float))
    assert sparse.elementwise_multiply(a, pattern) == a
    db = rand_dense(rng, 30, 30, 0.3)
    got = sparse.elementwise_multiply(a, sparse.from_dense(db))
    assert np.array_equal(got.toarray(), da * db)


def test_matmul_plus_times_example():
    a = sparse.from_dense([[1, 1], [0, 1]])
    b = sparse.from_dense([[1, 0], [1, 1]])
    want = dense_matmul([[1, 1], [0, 1]], [[1, 0], [1, 1]])
    assert want == [[2, 1], [1, 1]]
    assert sparse.matmul(a, b).toarray().tolist() == want
    ident = sparse.from_dense(np.eye(2))
    assert sparse.matmul(ident, a) == a


def test_matmul_max_plus_example():
    # unstored entries are the max-plus zero, -inf
    ninf = -math.inf
    da = [[1, 1], [ninf, 1]]
    db = [[1, ninf], [1, 1]]
    want = dense_matmul(da, db, add=max, mul=max_plus_mul, zero=ninf)
    assert want == [[2, 2], [2, 2]]
    got = sparse.matmul(sparse.from_dense([[1, 1], [0, 1]]), sparse.from_dense([[1, 0], [1, 1]]), max_plus())
    assert got.toarray(fill=ninf).tolist() == want


@pytest.mark.parametrize("ring_name", ["max_plus", "max_min"])
def test_matmul_generic_rings_match_dense(rng, ring_name):
    ring = {"max_plus": max_plus(), "max_min": max_min()}[ring_name]
    mul = max_plus_mul if ring_name == "max_plus" else min
    for _ in range(10):
        da = rand_dense(rng, 12, 9, 0.3)
        db = rand_dense(rng, 9, 7, 0.3)
        fill = lambda d: np.where(d == 0.0, -math.inf, d).tolist()
        want = dense_matmul(fill(da), fill(db), add=max, mul=mul, zero=-math.inf)
        got = sparse.matmul(sparse.from_dense(da), sparse.from_dense(db), ring)
        assert got.toarray(fill=-math.inf).tolist() == want
        assert not np.any(got.data == -math.inf)


def test_matmul_errors():
    with pytest.raises(ValueError):
        sparse.matmul(sparse.empty(2, 3), sparse.empty(2, 3))


def test_select_and_scatter():
    a = sparse.from_dense(np.diag([1.0, 2.0, 3.0]))
    assert sparse.select(a, None, None) == a
    sub = sparse.select(a, [0, 2], [0, 2])
    want = np.diag([1.0, 2.0, 3.0])[np.ix_([0, 2], [0, 2])]
    assert np.array_equal(sub.toarray(), want)
    big = sparse.scatter(sparse.from_dense([[1.0, 2.0], [3.0, 4.0]]), (3, 3), [0, 2], [0, 2])
    assert big.toarray().tolist() == [[1, 0, 2], [0, 0, 0], [3, 0, 4]]
    with pytest.raises(IndexError):
        sparse.select(a, [3], None)
    with pytest.raises(ValueError):
        sparse.select(a, [2, 0], None)


def test_nonempty_masks():
    r, c = sparse.nonempty_rows_cols(sparse.empty(3, 3))
    assert not r.any() and not c.any()
    m = sparse.from_triples(3, 3, [0, 1, 2], [0, 1, 2], [1.0, 0.0, 3.0])
    r, c = sparse.nonempty_rows_cols(m)
    assert r.tolist() == [True, False, True] and c.tolist() == [True, False, True]
    d = np.arange(1, 13, dtype=float).reshape(3, 4)
    r, c = sparse.nonempty_rows_cols(sparse.from_dense(d))
    assert r.all() and c.all()


def test_matrices_are_read_only():
    m = sparse.from_dense([[1.0]])
    with pytest.raises(ValueError):
        m.data[0] = 2.0


@pytest.mark.parametrize("density", [0.01, 0.1, 0.5])
@pytest.mark.parametrize("integer", [True, False])
def test_operations_match_dense(rng, density, integer):
    n = 200 if density < 0.5 else 80
    da, db = rand_dense(rng, n, n, density, integer), rand_dense(rng, n, n, density, integer)
    a, b = sparse.from_dense(da), sparse.from_dense(db)
    tol = dict(rtol=0 if integer else 1e-12, atol=0)
    np.testing.assert_allclose(sparse.add(a, b).toarray(), da + db, **tol)
    np.testing.assert_allclose(sparse.elementwise_multiply(a, b).toarray(), da * db, **tol)
    np.testing.assert_allclose(sparse.matmul(a, b).toarray(), da @ db, rtol=0 if integer else 1e-10, atol=0 if integer else 1e-12)
    for m in (sparse.add(a, b), sparse.elementwise_multiply(a, b), sparse.matmul(a, b)):
        assert not np.any(m.data == 0.0)


def test_matmul_plus_times_matches_triple_loop(rng):
    da, db = rand_dense(rng, 15, 11, 0.3), rand_dense(rng, 11, 13, 0.3)
    assert sparse.matmul(sparse.from_dense(da), sparse.from_dense(db)).toarray().tolist() == dense_matmul(
        da.tolist(), db.tolist()
    )


def test_matmul_associative_on_integers(rng):
    for _ in range(5):
        a, b, c = (sparse.from_dense(rand_dense(rng, 20, 20, 0.2)) for _ in range(3))
        assert sparse.matmul(sparse.matmul(a, b), c) == sparse.matmul(a, sparse.matmul(b, c))


triples_st = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(-3, 3)), max_size=40)


@settings(max_examples=200, deadline=None)
@given(triples_st, st.randoms(use_true_random=False))
def test_canonical_form_unique(triples, rnd):
    shuffled = list(triples)
    rnd.shuffle(shuffled)
    m1 = sparse.from_triples(7, 7, *zip(*triples)) if triples else sparse.empty(7, 7)
    m2 = sparse.from_triples(7, 7, *zip(*shuffled)) if shuffled else sparse.empty(7, 7)
    assert np.array_equal(m1.row, m2.row) and np.array_equal(m1.col, m2.col) and np.array_equal(m1.data, m2.data)
    dense = np.zeros((7, 7))
    for r, c, v in triples:
        dense[r, c] += v
    assert np.array_equal(m1.toarray(), dense)
    rmask, cmask = sparse.nonempty_rows_cols(m1)
    assert rmask.tolist() == (dense != 0).any(axis=1).tolist()
    assert cmask.tolist() == (dense != 0).any(axis=0).tolist()
    sub = sparse.select(m1, np.flatnonzero(rmask), np.flatnonzero(cmask))
    assert np.array_equal(np.sort(sub.data), np.sort(m1.data))
