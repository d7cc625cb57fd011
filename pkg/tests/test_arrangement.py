from collections import Counter
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given

from linarr.arrangement import (
    ArrangementError,
    LinearArrangement,
    edge_crossings,
    edge_lengths,
    format_arrangement,
    is_planar,
    parse_arrangement,
    random_arrangement,
    sample_sum_edge_lengths,
    sum_edge_lengths,
)
from linarr.oracle import branch_and_bound
from linarr.tree import path_tree, star_tree

from oracles import crossings
from strategies import trees_with_arrangement


def test_example_original_order(example_tree):
    assert sum_edge_lengths(example_tree, LinearArrangement.identity(7)) == 10


def test_example_minimum(example_tree):
    a = branch_and_bound(example_tree).arrangement
    assert sum_edge_lengths(example_tree, a) == 8


@pytest.mark.parametrize("n", [2, 5, 12])
def test_identity_path(n):
    assert sum_edge_lengths(path_tree(n), LinearArrangement.identity(n)) == n - 1


def test_size_mismatch():
    with pytest.raises(ArrangementError):
        sum_edge_lengths(path_tree(4), LinearArrangement.identity(5))


def test_not_a_permutation():
    with pytest.raises(ArrangementError):
        LinearArrangement.from_positions([1, 1, 2])
    with pytest.raises(ArrangementError):
        LinearArrangement.from_order([1, 4, 2])


def test_order_and_positions_are_inverse():
    a = LinearArrangement.from_order([3, 1, 2])
    assert a.positions == (2, 3, 1)
    assert a.order == (3, 1, 2)
    assert a.position(3) == 1


def test_star_never_crosses():
    t = star_tree(5)
    for perm in permutations(range(1, 6)):
        assert edge_crossings(t, LinearArrangement.from_positions(perm)) == 0


def test_path_crossing_example():
    a = LinearArrangement.from_positions([2, 4, 1, 3])
    t = path_tree(4)
    assert edge_crossings(t, a) >= 1
    assert edge_crossings(t, a) == crossings(t.edges, a.positions)
    assert not is_planar(t, a)
    assert is_planar(t, LinearArrangement.identity(4))


def test_random_arrangement_single_vertex():
    assert random_arrangement(1, seed=3).positions == (1,)


def test_random_arrangement_is_uniform():
    counts = Counter(random_arrangement(3, seed=s).positions for s in range(6000))
    assert len(counts) == 6
    # each of the 6 permutations expects 1000; 5 sd is about 150
    assert all(abs(c - 1000) < 150 for c in counts.values())


def test_sampling_is_reproducible(example_tree):
    a = sample_sum_edge_lengths(example_tree, 1000, seed=11)
    b = sample_sum_edge_lengths(example_tree, 1000, seed=11)
    assert np.array_equal(a, b)
    assert random_arrangement(9, seed=4) == random_arrangement(9, seed=4)


def test_monte_carlo_moments_fig1(example_tree):
    D = sample_sum_edge_lengths(example_tree, 100_000, seed=12345).astype(float)
    assert abs(D.mean() - 16) / 16 < 0.01
    assert abs(D.var() - 148 / 15) / (148 / 15) < 0.05


def test_parse_arrangement():
    a = parse_arrangement("3 1 2\n", 3)
    assert a.positions == (3, 1, 2)
    assert parse_arrangement(format_arrangement(a)) == a
    with pytest.raises((ArrangementError, ValueError)):
        parse_arrangement("1 2\n", 3)
    with pytest.raises((ArrangementError, ValueError)):
        parse_arrangement("1 x 2\n", 3)


# --- properties -----------------------------------------------------------------------

@given(trees_with_arrangement())
def test_reversal_invariance(pair):
    t, perm = pair
    a = LinearArrangement.from_positions(perm)
    assert sum_edge_lengths(t, a.reversed()) == sum_edge_lengths(t, a)
    assert edge_crossings(t, a.reversed()) == edge_crossings(t, a)


@given(trees_with_arrangement())
def test_length_bounds(pair):
    t, perm = pair
    a = LinearArrangement.from_positions(perm)
    lengths = edge_lengths(t, a)
    n = t.n
    assert all(1 <= d <= n - 1 for d in lengths)
    for d, c in Counter(lengths).items():
        assert c <= n - d
    assert n - 1 <= sum(lengths) <= (n - 1) ** 2


@given(trees_with_arrangement(max_n=10))
def test_crossings_match_reference(pair):
    t, perm = pair
    a = LinearArrangement.from_positions(perm)
    assert edge_crossings(t, a) == crossings(t.edges, perm)
    assert is_planar(t, a) == (crossings(t.edges, perm) == 0)


def test_exact_mean_small_tree():
    # average of D over all 5! arrangements of a path is (n^2 - 1)/3
    t = path_tree(5)
    total = sum(sum_edge_lengths(t, LinearArrangement.from_positions(p))
                for p in permutations(range(1, 6)))
    assert Fraction(total, 120) == 8
