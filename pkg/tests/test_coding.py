import numpy as np
import pytest

from mcboost.coding import (CodingMatrix, ColumnStream, exhaustive_ecoc,
                            min_row_distance, one_vs_all, random_dense_code)
from mcboost.errors import ConfigError


def test_matrix_validation():
    with pytest.raises(ConfigError):
        CodingMatrix(np.array([[1, 0], [1, -1]]))
    with pytest.raises(ConfigError):
        CodingMatrix(np.array([[1, -1]]))
    m = CodingMatrix(np.array([[1, 1], [1, 1]]))
    with pytest.raises(ConfigError):
        m.validate()                      # duplicated rows


def test_one_vs_all():
    m = one_vs_all(4)
    assert m.entries.shape == (4, 4)
    assert np.all(np.diag(m.entries) == 1)
    assert np.sum(m.entries == 1) == 4
    assert min_row_distance(m) == 2


def test_exhaustive_code_three_classes():
    m = exhaustive_ecoc(3)
    expected = np.array([[1, 1, 1],
                         [-1, -1, 1],
                         [-1, 1, -1]])
    assert np.array_equal(m.entries, expected)


def test_exhaustive_code_sizes_and_validity():
    for c in range(3, 8):
        m = exhaustive_ecoc(c)
        assert m.code_length == 2 ** (c - 1) - 1
        assert m.rows_distinct()
        assert m.columns_valid()
        assert np.all(m.entries[0] == 1)


def test_min_row_distance_matches_bruteforce():
    rng = np.random.default_rng(0)
    for _ in range(20):
        entries = rng.choice([-1, 1], size=(4, 6))
        m = CodingMatrix(entries)
        best = min(int(np.sum(entries[a] != entries[b]))
                   for a in range(4) for b in range(a + 1, 4))
        assert min_row_distance(m) == best


def test_random_dense_code_properties():
    m = random_dense_code(5, 10, seed=7)
    assert m.entries.shape == (5, 10)
    assert m.rows_distinct()
    again = random_dense_code(5, 10, seed=7)
    assert np.array_equal(m.entries, again.entries)
    other = random_dense_code(5, 10, seed=8)
    assert not np.array_equal(m.entries, other.entries)


def test_random_dense_code_too_short():
    with pytest.raises(ConfigError):
        random_dense_code(5, 2, seed=0)


def test_column_stream_both_signs_and_determinism():
    s = ColumnStream(4, 3)
    cols = [s.next_column() for _ in range(50)]
    for col in cols:
        assert col.min() == -1 and col.max() == 1
    t = ColumnStream(4, 3)
    for col in cols:
        assert np.array_equal(col, t.next_column())
