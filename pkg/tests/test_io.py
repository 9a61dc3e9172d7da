import numpy as np
import pytest

from assocarray import Assoc
from assocarray.io import BenchDataset, TripleFormatError, format_number, generate_bench, read_triples, write_triples
from conftest import assoc_from_dict
from oracles import random_array_dict


def test_write_empty(tmp_path):
    p = tmp_path / "e.tsv"
    assert write_triples(Assoc(), p) == 0
    assert p.read_text() == ""
    assert read_triples(p).is_empty


def test_write_figure(music, tmp_path):
    p = tmp_path / "music.tsv"
    assert write_triples(music, p) == 9
    lines = p.read_text(encoding="utf-8").split("\n")
    assert lines[0] == "0294.mp3\tartist\tPink Floyd"
    assert lines[-1] == ""
    assert read_triples(p) == music


def test_numeric_file(tmp_path):
    p = tmp_path / "n.tsv"
    p.write_text("a\tx\t1\nb\ty\t2.5\n")
    a = read_triples(p)
    assert a.is_numeric and a.val == 1.0
    assert a.to_dict() == {("a", "x"): 1.0, ("b", "y"): 2.5}


def test_duplicates_aggregate_by_min(tmp_path):
    p = tmp_path / "d.tsv"
    p.write_text("r\tc\tb\nr\tc\ta\nr\tc\tc\n")
    assert read_triples(p)["r", "c"] == min(["b", "a", "c"])


def test_malformed_line(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("a\tb\tc\nonly\ttwo\n")
    with pytest.raises(TripleFormatError, match=":2:"):
        read_triples(p)


def test_missing_file(tmp_path):
    with pytest.raises(OSError, match="missing"):
        read_triples(tmp_path / "missing.tsv")


def test_delimiter_in_field_rejected(tmp_path):
    with pytest.raises(TripleFormatError):
        write_triples(Assoc(["a\tb"], ["c"], ["v"]), tmp_path / "x.tsv")


def test_numeric_keys_option(tmp_path):
    a = Assoc([1, 2.5], ["x", "y"], [3, 4])
    p = tmp_path / "k.tsv"
    write_triples(a, p)
    assert p.read_text().startswith("1\tx\t3\n")
    assert read_triples(p, numeric_keys=True) == a
    assert read_triples(p).row.tolist() == ["1", "2.5"]


def test_format_number():
    assert format_number(5.0) == "5"
    assert format_number(0.1) == "0.1"
    assert float(format_number(1 / 3)) == 1 / 3
    assert format_number(1e300) == "1e+300"


@pytest.mark.parametrize("kind", ["str", "float", "int"])
def test_round_trip_random(tmp_path, rng, kind):
    for i in range(20):
        a = assoc_from_dict(random_array_dict(rng, kind))
        p = tmp_path / f"{kind}{i}.tsv"
        write_triples(a, p)
        b = read_triples(p)
        assert b == a
        assert np.array_equal(b.adj.data, a.adj.data)


def test_generate_bench_deterministic():
    a, b = generate_bench(7, seed=3), generate_bench(7, seed=3)
    for name in ("rows", "rows2", "cols", "cols2", "num_vals", "str_vals"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    assert not np.array_equal(a.rows, generate_bench(7, seed=4).rows)


def test_generate_bench_n5():
    d = generate_bench(5)
    for name in ("rows", "rows2", "cols", "cols2", "num_vals", "str_vals"):
        assert len(getattr(d, name)) == 256
    ints = d.rows.astype(int)
    assert ints.min() >= 0 and ints.max() < 32
    assert all(str(x) == s for x, s in zip(ints, d.rows))
    assert all(len(s) == 8 and s.isalpha() and s.islower() for s in d.str_vals)


def test_generate_bench_mean():
    d = generate_bench(10)
    assert abs(d.num_vals.mean() - 50) <= 5
    assert d.num_vals.min() >= 0 and d.num_vals.max() <= 100


@pytest.mark.parametrize("n", range(5, 19))
def test_generate_bench_ranges(n):
    d = generate_bench(n, seed=1)
    assert d.size == 8 * 2**n
    for name in ("rows", "rows2", "cols", "cols2"):
        v = getattr(d, name).astype(np.int64)
        assert len(v) == d.size and v.min() >= 0 and v.max() < 2**n
    assert len(d.num_vals) == len(d.str_vals) == d.size
    assert d.num_vals.min() >= 0 and d.num_vals.max() <= 100


def test_generate_bench_range_errors():
    with pytest.raises(ValueError):
        generate_bench(4)
    with pytest.raises(ValueError):
        generate_bench(19)


def test_bench_files_round_trip(tmp_path):
    d = generate_bench(5, seed=9)
    paths = d.save(tmp_path)
    assert sorted(p.name for p in paths) == sorted(
        ["rows.txt", "rows2.txt", "cols.txt", "cols2.txt", "num_vals.txt", "string_vals.txt"]
    )
    assert len((tmp_path / "rows.txt").read_text().splitlines()) == 256
    back = BenchDataset.load(tmp_path, 5, 9)
    for name in ("rows", "rows2", "cols", "cols2", "num_vals", "str_vals"):
        assert np.array_equal(getattr(back, name), getattr(d, name))
