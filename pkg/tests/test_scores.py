import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from linarr import formulas as F
from linarr.arrangement import LinearArrangement, sample_sum_edge_lengths
from linarr.oracle import branch_and_bound, brute_force_extrema
from linarr.scores import (
    ScoreError,
    asymptotic_limits,
    extrema_from_values,
    finite_score,
    kind_label,
    named_extrema,
    score_arrangement,
    score_extrema,
    table_rows_for,
    z_key,
    z_max_upper_bound,
    z_value,
)
from linarr.tree import (
    BALANCED_BISTAR,
    LINEAR,
    QUASISTAR,
    STAR,
    bistar_tree,
    classify,
    path_tree,
    star_tree,
)
from linarr.validation import round2

from strategies import trees_with_arrangement

ROOT = math.sqrt(15 / 37)


def test_example_column_a(example_tree):
    r = score_arrangement(example_tree, LinearArrangement.identity(7), 8)
    assert (r.D, r.delta, r.gamma) == (10, 2, Fraction(5, 4))
    assert r.z == pytest.approx(-3 * ROOT, rel=1e-12)
    assert (r.e_rla, r.v_rla) == (16, Fraction(148, 15))


def test_example_column_b(example_tree):
    a = branch_and_bound(example_tree).arrangement
    r = score_arrangement(example_tree, a, 8)
    assert (r.D, r.delta, r.gamma) == (8, 0, 1)
    assert r.z == pytest.approx(-4 * ROOT, rel=1e-12)


def test_minimum_arrangement_scores():
    t = bistar_tree(9, 6)
    res = branch_and_bound(t)
    r = score_arrangement(t, res.arrangement, res.dmin)
    assert (r.delta, r.gamma) == (0, 1)


def test_score_errors(example_tree):
    a = LinearArrangement.identity(7)
    with pytest.raises(ScoreError):
        score_arrangement(example_tree, a, 0)
    with pytest.raises(ScoreError):
        score_arrangement(example_tree, a, 11)
    with pytest.raises(ScoreError):
        score_arrangement(path_tree(2), LinearArrangement.identity(2), 1)
    with pytest.raises(ScoreError):
        z_value(Fraction(1), Fraction(0))


@settings(max_examples=80, deadline=None)
@given(trees_with_arrangement(min_n=3, max_n=8))
def test_score_invariants(pair):
    t, perm = pair
    dmin = brute_force_extrema(t)[0]
    r = score_arrangement(t, LinearArrangement.from_positions(perm), dmin)
    assert r.delta >= 0 and r.gamma >= 1
    assert (r.delta == 0) == (r.gamma == 1) == (r.D == dmin)
    expected = float(r.D - r.e_rla) / math.sqrt(float(r.v_rla))
    assert r.z == pytest.approx(expected, rel=1e-12, abs=1e-15)
    key = z_key(r.D - r.e_rla, r.v_rla)
    assert (key > 0) == (r.z > 0) and (key < 0) == (r.z < 0)


def test_z_key_orders_like_z():
    V = Fraction(148, 15)
    diffs = [Fraction(d) for d in range(-8, 9)]
    assert sorted(diffs, key=lambda d: z_key(d, V)) == sorted(diffs, key=lambda d: z_value(d, V))


# --- extrema ------------------------------------------------------------------------------

def test_named_examples(records):
    (bb9,) = [r for r in records[9] if BALANCED_BISTAR in classify(r.tree)]
    assert score_extrema(bb9).delta_max == 34
    (bb10,) = [r for r in records[10] if BALANCED_BISTAR in classify(r.tree)]
    assert str(round2(score_extrema(bb10).z_max)) == "4.37"
    assert named_extrema(LINEAR, 11).gamma_max == Fraction(59, 10)


def test_named_matches_record_extrema(records):
    for n in range(4, 11):
        for kind in (LINEAR, STAR, QUASISTAR, BALANCED_BISTAR):
            rec = next(r for r in records[n] if kind in classify(r.tree))
            a, b = named_extrema(kind, n), score_extrema(rec)
            assert (a.delta_max, a.gamma_max, a.delta_rla, a.gamma_rla) == \
                   (b.delta_max, b.gamma_max, b.delta_rla, b.gamma_rla)
            assert a.z_max_key == b.z_max_key and a.z_min_key == b.z_min_key


def test_extrema_invariants(records):
    for n in range(3, 11):
        for r in records[n]:
            ex = score_extrema(r)
            assert 0 <= ex.delta_rla <= ex.delta_max
            assert 1 <= ex.gamma_rla <= ex.gamma_max
            assert ex.z_min <= 0 <= ex.z_max


def test_delta_gamma_chains(records):
    for n in range(3, 11):
        star = extrema_from_values(n, n * (n - 1), n * n // 4, n * (n - 1) // 2)
        bb = F.dmax_balanced_bistar(n)
        for r in records[n]:
            ex = score_extrema(r)
            assert star.delta_max <= ex.delta_max <= bb - (n - 1)
            assert star.gamma_max <= ex.gamma_max <= Fraction(bb, n - 1)


def test_z_chains(records):
    for n in range(3, 11):
        V_lin = F.variance_rla_closed_form(LINEAR, n)
        V_star = F.variance_rla_closed_form(STAR, n)
        lin = named_extrema(LINEAR, n)
        star = named_extrema(STAR, n)
        for r in records[n]:
            ex = score_extrema(r)
            assert V_lin <= ex.v_rla <= V_star
            assert lin.z_min_key <= ex.z_min_key <= star.z_min_key <= 0
            assert 0 <= star.z_max_key <= ex.z_max_key
            assert ex.z_max <= z_max_upper_bound(n) + 1e-12


def test_monte_carlo_mean_z(example_tree):
    D = sample_sum_edge_lengths(example_tree, 100_000, seed=7).astype(float)
    z = (D - 16) / math.sqrt(148 / 15)
    se = z.std(ddof=1) / math.sqrt(len(z))
    assert abs(z.mean()) < 3 * se


# --- limits -------------------------------------------------------------------------------

def test_limit_constants():
    lim = asymptotic_limits()
    assert lim["gamma_max"] == {BALANCED_BISTAR: 6, STAR: 2, QUASISTAR: 2}
    assert lim["z_min"][BALANCED_BISTAR] == pytest.approx(-5 / 4 * math.sqrt(10))
    assert lim["z_max"][STAR] == pytest.approx(math.sqrt(5))
    assert lim["z_min"][QUASISTAR] == pytest.approx(-math.sqrt(5) / 2)


def test_limits_at_large_n():
    for score, by_kind in asymptotic_limits().items():
        for kind, limit in by_kind.items():
            value = finite_score(score, kind, 10 ** 4)
            assert abs(value - limit) / abs(limit) < 0.002, (score, kind, value)


def test_finite_score_rejects_unknown():
    with pytest.raises(ScoreError):
        finite_score("delta_rla", STAR, 10)
    with pytest.raises(ScoreError):
        named_extrema("caterpillar", 10)


# --- tables ---------------------------------------------------------------------------------

def test_table_row_n9(records):
    rows = table_rows_for(9, records[9])
    delta = rows["delta"]
    assert (delta.reference, delta.maximum) == (34, 35)
    assert all(tr.kind == "cat" for tr in delta.attaining)


def test_gamma_maximised_only_by_linear(records):
    for n in range(3, 11):
        rows = table_rows_for(n, records[n])["gamma"]
        assert len(rows.attaining) == 1
        assert rows.attaining[0].kind.startswith("linear")


def test_kind_labels():
    assert kind_label(classify(path_tree(3))) == "linear star b-bistar"
    assert kind_label(classify(path_tree(4))) == "linear quasi b-bistar"
    assert kind_label(classify(star_tree(6))) == "star"
    assert kind_label(classify(bistar_tree(9, 6))) == "bistar"


def test_z_value_is_signed():
    assert z_value(Fraction(-3), Fraction(9)) == -1.0
    assert z_value(Fraction(0), Fraction(9)) == 0.0
    assert np.isclose(z_value(Fraction(2), Fraction(2)), math.sqrt(2))
