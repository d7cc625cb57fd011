from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linarr.tree import (
    BALANCED_BISTAR,
    BISTAR,
    CATERPILLAR,
    GENERAL,
    LINEAR,
    QUASISTAR,
    STAR,
    TreeError,
    bfs_distances,
    bistar_tree,
    canonical_form,
    classify,
    degree_spectrum,
    degree_stats,
    diameter,
    format_edge_list,
    from_edge_list,
    from_head_vector,
    is_caterpillar,
    isomorphism,
    jordan_centers,
    neighborhood_shells,
    parse_edge_list,
    parse_head_vector,
    path_tree,
    prufer_decode,
    prufer_encode,
    signature,
    star_tree,
)

from oracles import distances, isomorphic
from strategies import relabelled, trees

SPIDER7 = from_edge_list(7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])


# --- construction --------------------------------------------------------------

def test_smallest_tree():
    t = from_edge_list(2, [(1, 2)])
    assert t.edges == ((1, 2),)
    assert classify(t).tag == LINEAR


def test_example_degree_data(example_tree):
    ds = degree_stats(example_tree)
    assert (ds.K2, ds.q) == (26, 6)
    assert example_tree.n == 7


@pytest.mark.parametrize("n,pairs,message", [
    (4, [(1, 2), (2, 3), (1, 3)], "cycle"),
    (4, [(1, 2), (2, 3), (3, 1), (3, 4)], "cycle"),
    (4, [(1, 2), (3, 4)], "expected 3 edges"),
    (3, [(1, 2), (2, 4)], "outside"),
    (3, [(1, 2), (2, 1)], "duplicate"),
    (3, [(1, 1), (1, 2)], "self-loop"),
    (0, [], "at least one vertex"),
])
def test_from_edge_list_rejects(n, pairs, message):
    with pytest.raises(TreeError, match=message):
        from_edge_list(n, pairs)


def test_head_vector_errors():
    with pytest.raises(TreeError, match="multiple roots"):
        from_head_vector([0, 1, 0])
    with pytest.raises(TreeError, match="no root"):
        from_head_vector([2, 1])
    with pytest.raises(TreeError, match="outside"):
        from_head_vector([0, 5, 1])


def test_parse_edge_list_line_numbers():
    assert parse_edge_list("3\n1 2\n2 3\n").edges == ((1, 2), (2, 3))
    with pytest.raises(TreeError, match="line 3"):
        parse_edge_list("3\n1 2\n2 x\n")
    with pytest.raises(TreeError, match="line 2"):
        parse_edge_list("3\n1 2 3\n2 3\n")
    with pytest.raises(TreeError, match="line 3: vertex outside"):
        parse_edge_list("3\n1 2\n2 9\n")
    with pytest.raises(TreeError, match="line 1"):
        parse_edge_list("")


def test_parse_head_vector():
    t = parse_head_vector("2 4 4 0 7 7 4\n")
    assert degree_stats(t).K2 == 26
    with pytest.raises(TreeError, match="line 1: multiple roots"):
        parse_head_vector("0 1 0")
    with pytest.raises(TreeError, match="line 2"):
        parse_head_vector("0 1\n1 0\n")


@given(trees())
def test_edge_list_round_trip(t):
    assert parse_edge_list(format_edge_list(t)) == t


# --- degree statistics --------------------------------------------------------------

def test_degree_stats_linear():
    ds = degree_stats(path_tree(6))
    assert (ds.k1, ds.K2, ds.q) == (2, 18, 2)
    assert ds.K2 == 4 * 6 - 6


def test_degree_stats_star():
    ds = degree_stats(star_tree(6))
    assert (ds.k1, ds.K2, ds.q) == (5, 30, 6)
    # odd hub degree: every vertex has odd degree
    assert degree_stats(star_tree(7)).q == 6


def test_mean_k2_is_exact(example_tree):
    assert degree_stats(example_tree).mean_k2 == Fraction(26, 7)


@given(trees())
def test_handshake_and_parity(t):
    ds = degree_stats(t)
    assert sum(t.degrees) == 2 * (t.n - 1)
    assert ds.q % 2 == 0
    assert ds.K2 == sum(k * k for k in t.degrees)
    assert sum(k * c for k, c in degree_spectrum(t).items()) == 2 * (t.n - 1)


# --- classification -------------------------------------------------------------------

def test_n3_flags_overlap():
    cls = classify(path_tree(3))
    assert {LINEAR, STAR, BALANCED_BISTAR, CATERPILLAR} <= cls.flags


def test_balanced_bistar_n6():
    t = from_edge_list(6, [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    cls = classify(t)
    assert cls.tag == BALANCED_BISTAR
    assert BISTAR in cls and CATERPILLAR in cls


def test_quasistar_n6():
    t = from_edge_list(6, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6)])
    cls = classify(t)
    assert cls.tag == QUASISTAR
    assert BISTAR in cls and BALANCED_BISTAR not in cls


def test_other_classes():
    assert classify(star_tree(7)).tag == STAR
    assert classify(bistar_tree(9, 6)).tag == BISTAR
    cat = from_edge_list(7, [(1, 2), (2, 3), (3, 4), (1, 5), (2, 6), (3, 7)])
    assert classify(cat).tag == CATERPILLAR
    assert classify(SPIDER7).tag == GENERAL
    assert not is_caterpillar(SPIDER7)


@given(relabelled())
def test_classify_is_label_free(pair):
    t, perm = pair
    u = t.relabel(perm)
    assert classify(u).flags == classify(t).flags
    assert classify(u).tag == classify(t).tag


# --- distances and centres ----------------------------------------------------------

def test_shells_star():
    t = star_tree(5)
    assert neighborhood_shells(t, 1) == [{1}, {2, 3, 4, 5}]
    assert neighborhood_shells(t, 3) == [{3}, {1}, {2, 4, 5}]


def test_shells_path():
    assert neighborhood_shells(path_tree(4), 2) == [{2}, {1, 3}, {4}]


@given(trees(), st.data())
def test_shells_partition(t, data):
    v = data.draw(st.integers(1, t.n))
    shells = neighborhood_shells(t, v)
    assert sum(len(s) for s in shells) == t.n
    assert set().union(*shells) == set(range(1, t.n + 1))
    assert shells[0] == {v}
    assert len(shells) - 1 == max(bfs_distances(t, v)[1:])


@given(trees(max_n=9))
def test_bfs_matches_floyd(t):
    d = distances(t.n, t.edges)
    for v in range(1, t.n + 1):
        assert bfs_distances(t, v)[1:] == d[v][1:]
    assert diameter(t) == max(max(row[1:]) for row in d[1:])


def test_jordan_centers():
    assert jordan_centers(path_tree(5)) == {3}
    assert jordan_centers(path_tree(6)) == {3, 4}
    assert jordan_centers(star_tree(7)) == {1}


@given(trees())
def test_centers_minimise_eccentricity(t):
    ecc = {v: max(bfs_distances(t, v)[1:]) for v in range(1, t.n + 1)}
    best = min(ecc.values())
    c = jordan_centers(t)
    assert c == {v for v, e in ecc.items() if e == best}
    assert len(c) in (1, 2)
    if len(c) == 2:
        u, v = sorted(c)
        assert (u, v) in t.edges


# --- signatures -----------------------------------------------------------------

@given(relabelled())
def test_signature_invariant_under_relabelling(pair):
    t, perm = pair
    u = t.relabel(perm)
    assert signature(u) == signature(t)
    assert canonical_form(u) == canonical_form(t)


@given(relabelled())
def test_isomorphism_maps_edges(pair):
    t, perm = pair
    u = t.relabel(perm)
    phi = isomorphism(t, u)
    assert {tuple(sorted((phi[a], phi[b]))) for a, b in t.edges} == set(u.edges)


def test_path_vs_star():
    assert signature(path_tree(4)) != signature(star_tree(4))
    with pytest.raises(TreeError):
        isomorphism(path_tree(4), star_tree(4))


def test_seven_vertex_classes_distinct():
    # collect one labelled tree per signature from the full Prüfer space, then
    # check pairwise non-isomorphism exhaustively
    n = 7
    reps = {}
    rng = np.random.default_rng(7)
    for code in rng.integers(1, n + 1, size=(20000, n - 2)):
        t = prufer_decode(code.tolist(), n)
        reps.setdefault(signature(t), t)
    assert len(reps) == 11
    trees_ = list(reps.values())
    for i in range(len(trees_)):
        for j in range(i + 1, len(trees_)):
            assert not isomorphic(n, trees_[i].edges, trees_[j].edges)


# --- Prüfer codes --------------------------------------------------------------------

def test_prufer_base_cases():
    assert prufer_decode([], 2).edges == ((1, 2),)
    assert prufer_decode([1] * 5, 7) == star_tree(7)


def test_prufer_rejects_out_of_range():
    with pytest.raises(TreeError):
        prufer_decode([1, 9], 4)
    with pytest.raises(TreeError):
        prufer_decode([0, 1], 4)


def test_prufer_round_trip_random_sequences():
    rng = np.random.default_rng(2024)
    for code in rng.integers(1, 10, size=(1000, 7)):
        seq = tuple(code.tolist())
        assert prufer_encode(prufer_decode(seq, 9)) == seq


@settings(max_examples=200)
@given(trees())
def test_encode_decode_identity(t):
    assert prufer_decode(prufer_encode(t), t.n) == t
