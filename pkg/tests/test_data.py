"""Tests for the sample containers, the seed policy and the dataset loader."""

import io

import numpy as np
import pytest

from src.data import RngPolicy, SamplePair, load_dataset, pool, unpool
from src.data.samples import PooledSample
from src.errors import ConfigError, DataError, EmptyGroupError, LabelError, ParseError

@pytest.fixture
def small_csv(tmp_path):
    """Three observations, labels {A, A, B}, two features."""
    path = tmp_path / "small.csv"
    path.write_text("label,f1,f2\nA,1,2\nA,3,4\nB,5,6\n", encoding="utf-8")
    return str(path)

def test_sample_pair_shapes():
    """SamplePair exposes m, n, d and N."""
    sp = SamplePair([[1.0, 2.0], [3.0, 4.0]], [[5.0, 6.0]])
    assert (sp.m, sp.n, sp.d, sp.total) == (2, 1, 2, 3)
    np.testing.assert_allclose(sp.mean_difference(), [-3.0, -3.0])
    np.testing.assert_array_equal(sp.labels(), [1.0, 1.0, -1.0])

def test_sample_pair_is_read_only():
    """Stored matrices are copies and cannot be written."""
    x = np.zeros((2, 3))
    sp = SamplePair(x, np.ones((2, 3)))
    x[0, 0] = 7.0
    assert sp.x_rows[0, 0] == 0.0
    with pytest.raises(ValueError):
        sp.x_rows[0, 0] = 1.0

def test_sample_pair_rejects_dimension_mismatch():
    """X and Y must have the same number of columns."""
    with pytest.raises(DataError):
        SamplePair(np.zeros((2, 3)), np.zeros((2, 4)))

def test_sample_pair_rejects_empty_group():
    """Both groups need at least one row."""
    with pytest.raises(EmptyGroupError):
        SamplePair(np.zeros((0, 3)), np.zeros((2, 3)))

def test_sample_pair_rejects_non_finite():
    """NaN entries are rejected at construction."""
    with pytest.raises(DataError):
        SamplePair([[np.nan, 1.0]], [[0.0, 0.0]])

def test_pool_and_unpool():
    """Pooling stacks X over Y; unpooling restores the groups."""
    sp = SamplePair([[1.0], [2.0]], [[3.0]], label_x="a", label_y="b")
    pooled = pool(sp)
    assert pooled.total == 3
    assert pooled.split_m == 2
    back = unpool(pooled)
    np.testing.assert_array_equal(back.x_rows, sp.x_rows)
    np.testing.assert_array_equal(back.y_rows, sp.y_rows)
    assert (back.label_x, back.label_y) == ("a", "b")

def test_pool_of_two_singletons():
    """m = n = 1 pools to N = 2."""
    assert pool(SamplePair([[0.0]], [[1.0]])).total == 2

def test_pooled_sample_split_bounds():
    """split_m must leave both groups nonempty."""
    with pytest.raises(EmptyGroupError):
        PooledSample(np.zeros((3, 1)), 3)

def test_reordered_requires_permutation():
    """Reordering accepts only permutations of range(N)."""
    pooled = PooledSample(np.arange(3.0).reshape(3, 1), 1)
    np.testing.assert_array_equal(pooled.reordered([2, 0, 1]).z_rows.ravel(), [2.0, 0.0, 1.0])
    with pytest.raises(DataError):
        pooled.reordered([0, 0, 1])

def test_rng_streams_reproducible():
    """The same (seed, prefix, index) gives the same values."""
    a = RngPolicy(7).stream(3).standard_normal(5)
    b = RngPolicy(7).stream(3).standard_normal(5)
    np.testing.assert_array_equal(a, b)

def test_rng_streams_independent_of_order():
    """Drawing stream 5 before stream 2 does not change either."""
    policy = RngPolicy(11)
    late = policy.stream(5).random(4)
    early = policy.stream(2).random(4)
    np.testing.assert_array_equal(late, RngPolicy(11).stream(5).random(4))
    np.testing.assert_array_equal(early, RngPolicy(11).stream(2).random(4))
    assert not np.array_equal(late, early)

def test_rng_child_prefix():
    """Child policies extend the spawn key and differ from their parent."""
    child = RngPolicy(3).child(4)
    assert child.prefix == (4,)
    assert child.child(1).prefix == (4, 1)
    assert not np.array_equal(child.stream(0).random(3), RngPolicy(3).stream(0).random(3))

def test_rng_rejects_invalid_seed():
    """Seeds are unsigned 64-bit integers."""
    with pytest.raises(ConfigError):
        RngPolicy(-1)
    with pytest.raises(ConfigError):
        RngPolicy(0).stream(-1)

def test_load_small_csv(small_csv):
    """The lexicographically smaller label becomes X."""
    sp = load_dataset(small_csv)
    assert (sp.m, sp.n, sp.d) == (2, 1, 2)
    assert (sp.label_x, sp.label_y) == ("A", "B")
    np.testing.assert_array_equal(sp.y_rows, [[5.0, 6.0]])

def test_load_positive_label(small_csv):
    """positive_label chooses which group is X."""
    sp = load_dataset(small_csv, positive_label="B")
    assert (sp.m, sp.n) == (1, 2)
    assert sp.label_x == "B"

def test_load_unknown_positive_label(small_csv):
    """A positive label that selects no rows is an error."""
    with pytest.raises(EmptyGroupError):
        load_dataset(small_csv, positive_label="C")

def test_load_label_column_by_name(tmp_path):
    """The label column can sit anywhere and be chosen by name."""
    path = tmp_path / "named.tsv"
    path.write_text("f1\tgroup\tf2\n1\tx\t2\n3\ty\t4\n", encoding="utf-8")
    sp = load_dataset(str(path), labels="group")
    assert (sp.m, sp.n, sp.d) == (1, 1, 2)
    np.testing.assert_array_equal(sp.x_rows, [[1.0, 2.0]])

def test_load_transposed(tmp_path):
    """Features-by-observations files load after transposition."""
    path = tmp_path / "wide.csv"
    path.write_text("feature,o1,o2,o3\nlabel,A,A,B\nf1,1,3,5\nf2,2,4,6\n", encoding="utf-8")
    sp = load_dataset(str(path), transpose=True)
    assert (sp.m, sp.n, sp.d) == (2, 1, 2)
    np.testing.assert_array_equal(sp.x_rows, [[1.0, 2.0], [3.0, 4.0]])

def test_load_labels_file(tmp_path):
    """Labels can come from a separate one-per-line file."""
    data = tmp_path / "data.csv"
    data.write_text("f1,f2\n1,2\n3,4\n5,6\n", encoding="utf-8")
    labels = tmp_path / "labels.txt"
    labels.write_text("A\nB\nB\n", encoding="utf-8")
    sp = load_dataset(str(data), labels_file=str(labels))
    assert (sp.m, sp.n, sp.d) == (1, 2, 2)

def test_load_rejects_three_labels(tmp_path):
    """Exactly two distinct labels are required."""
    path = tmp_path / "three.csv"
    path.write_text("label,f1\nA,1\nB,2\nC,3\n", encoding="utf-8")
    with pytest.raises(LabelError):
        load_dataset(str(path))

def test_load_reports_bad_cell(tmp_path):
    """Non-numeric cells raise ParseError with their location."""
    path = tmp_path / "bad.csv"
    path.write_text("label,f1,f2\nA,1,oops\nB,2,3\n", encoding="utf-8")
    with pytest.raises(ParseError) as excinfo:
        load_dataset(str(path))
    assert excinfo.value.row == 1
    assert excinfo.value.column == "f2"

def test_load_from_stdin(monkeypatch):
    """A dash path reads the dataset from standard input."""
    monkeypatch.setattr("sys.stdin", io.StringIO("label,f1\nA,1\nB,2\n"))
    sp = load_dataset("-")
    assert (sp.m, sp.n, sp.d) == (1, 1, 1)
