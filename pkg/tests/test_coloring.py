import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from partition_lab.coloring import (
    ORDERED,
    UNORDERED,
    PathWitness,
    RectangleColoring01,
    check_path_witness,
    coloring_from_json,
    constant_coloring,
    increasing_subsequence_indices,
    longest_increasing_subsequence,
    make_coloring,
    random_coloring,
    verify_rectangle,
)
from partition_lab.errors import DuplicatePair, MissingPair, OutOfRange, SelfPair
from partition_lab.oracles import lis_brute


def test_single_unordered_pair():
    c = make_coloring(2, {(0, 1): 5}, UNORDERED)
    assert c(0, 1) == c(1, 0) == 5


def test_missing_pair():
    with pytest.raises(MissingPair):
        make_coloring(3, {(0, 1): 1, (1, 2): 1})


def test_ordered_total():
    entries = {(a, b): a * 3 + b for a, b in itertools.permutations(range(3), 2)}
    c = make_coloring(3, entries, ORDERED)
    assert c(0, 1) == 1 and c(1, 0) == 3


@pytest.mark.parametrize("entries, err", [
    ({(0, 0): 1}, SelfPair),
    ({(0, 5): 1}, OutOfRange),
    ([(0, 1, 1), (1, 0, 2)], DuplicatePair),
])
def test_bad_entries(entries, err):
    with pytest.raises(err):
        make_coloring(2, entries)


def test_sparse_storage_matches_dense(monkeypatch):
    import partition_lab.coloring as mod
    entries = {(a, b): (a + b) % 3 for a, b in itertools.combinations(range(6), 2)}
    dense = make_coloring(6, entries)
    monkeypatch.setattr(mod, "DENSE_LIMIT", 2)
    sparse = make_coloring(6, entries)
    assert not sparse.dense
    assert sparse == dense
    assert sparse.palette == dense.palette


def test_random_palette_one_is_constant():
    c = random_coloring(4, 1, seed=123)
    assert c == constant_coloring(4, 0)


def test_random_deterministic():
    assert random_coloring(5, 3, 7) == random_coloring(5, 3, 7)
    assert random_coloring(5, 3, 7, ORDERED) == random_coloring(5, 3, 7, ORDERED)


def test_random_seeds_differ():
    differ = sum(random_coloring(5, 3, s) != random_coloring(5, 3, s + 1) for s in range(100))
    assert differ >= 99


@pytest.mark.parametrize("kind", [UNORDERED, ORDERED])
def test_json_round_trip(kind):
    c = random_coloring(7, 4, 1, kind)
    back = coloring_from_json(c.to_json())
    assert back == c
    assert back.kind == kind
    assert all(back(a, b) == c(a, b) for a, b in itertools.permutations(range(7), 2))


def test_lis_examples():
    assert longest_increasing_subsequence((5, 6, 5, 8)) == 3
    assert longest_increasing_subsequence((3, 2, 1)) == 1
    assert longest_increasing_subsequence(()) == 0


def test_lis_exhaustive_small():
    for length in range(0, 8):
        for seq in itertools.product(range(4), repeat=min(length, 5)):
            assert longest_increasing_subsequence(seq) == lis_brute(seq)


def test_lis_random_long():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        seq = rng.integers(0, 10, size=int(rng.integers(0, 15))).tolist()
        assert longest_increasing_subsequence(seq) == lis_brute(seq)


@given(st.lists(st.integers(-5, 20), max_size=12))
def test_lis_indices_are_a_witness(seq):
    idx = increasing_subsequence_indices(seq)
    assert len(idx) == longest_increasing_subsequence(seq)
    assert all(i < j and seq[i] < seq[j] for i, j in zip(idx, idx[1:]))


def test_path_witness_checks():
    c = make_coloring(3, {(0, 1): 1, (1, 2): 1, (0, 2): 2})
    w = PathWitness.from_vertices(c, [0, 1, 2])
    assert check_path_witness(c, w, increasing=True, color=1).valid
    bad = PathWitness((0, 1, 2), (1, 2), 3)
    assert not check_path_witness(c, bad).valid
    assert not check_path_witness(c, PathWitness((0, 1, 2), (1, 1), 2)).valid
    assert not check_path_witness(c, PathWitness.from_vertices(c, [2, 0, 1]), increasing=True).valid
    assert PathWitness.from_dict(json.loads(json.dumps(w.to_dict()))) == w


def test_rectangle_constant_zero():
    c = RectangleColoring01(4, 4, np.zeros((4, 4)))
    assert verify_rectangle(c, {0, 1}, {2, 3}, 0).valid


def test_rectangle_column_zero():
    cells = np.zeros((4, 4))
    cells[:, 0] = 1
    c = RectangleColoring01(4, 4, cells)
    assert verify_rectangle(c, {1, 2}, {0}, 1).valid
    v = verify_rectangle(c, {1, 2}, {0}, 0)
    assert not v.valid and v.witness == (1, 0)


def test_rectangle_out_of_range():
    c = RectangleColoring01(2, 2, np.zeros((2, 2)))
    with pytest.raises(OutOfRange):
        verify_rectangle(c, {3}, {0}, 0)


@settings(max_examples=50)
@given(st.integers(2, 8), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_totality(n, palette, seed):
    c = random_coloring(n, palette, seed)
    m = c.matrix
    off = ~np.eye(n, dtype=bool)
    assert (m[off] >= 0).all() and (m[off] < palette).all()
    assert (m == m.T).all()
