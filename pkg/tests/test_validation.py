from dataclasses import replace
from decimal import Decimal
from fractions import Fraction

from linarr.scores import table_rows_for
from linarr.validation import (
    TREE_COUNTS,
    check_tables,
    compare_table,
    observe_conjectures,
    records_csv_rows,
    round2,
    run_validation,
    worked_example,
)


def test_round2_is_half_up():
    assert round2(Fraction(1, 8)) == Decimal("0.13")
    assert round2(2.675) == Decimal("2.68")
    assert round2(Fraction(49, 11)) == Decimal("4.45")
    assert round2(35) == Decimal("35.00")


def test_tree_counts_prefix():
    assert TREE_COUNTS[2:11] == (1, 1, 2, 3, 6, 11, 23, 47, 106)


def test_worked_example_resolution():
    w = worked_example()
    assert (w.dmin, w.dmax, w.K2, w.q) == (8, 26, 26, 6)
    assert (w.e_rla, w.v_rla) == (16, Fraction(148, 15))
    assert w.original_D == 10 and w.min_D == 8
    # the third reference layout disagrees with itself and with D_max
    implied = w.third_layout_implied_D
    assert implied["D"] == 20 and implied["delta"] == 18 and implied["gamma"] == 16
    assert implied["z"] == 20
    assert w.dmax not in implied.values()


def test_compare_table_flags_changes(records):
    row = table_rows_for(9, records[9])["delta"]
    assert compare_table(row) == []
    assert compare_table(replace(row, maximum=36))
    assert compare_table(replace(row, attaining=row.attaining[:-1]))


def test_check_tables_counts_rows(records):
    rows = table_rows_for(8, records[8])
    result = check_tables({k: [v] for k, v in rows.items()})
    assert result.passed and result.detail == "3 rows compared"


def test_conjectures_are_informational(records):
    tables = {k: [v] for k, v in table_rows_for(9, records[9]).items()}
    obs = observe_conjectures({9: records[9]}, tables)
    assert all(o.informational for o in obs)
    names = {o.name: o for o in obs}
    assert names["conjecture_gamma_linear"].passed
    assert names["observation_zmax_bbistar"].passed


def test_run_validation_small():
    report = run_validation(7)
    assert report.ok
    d = report.to_dict()
    assert d["n_max"] == 7 and d["ok"]
    assert {c["name"] for c in d["checks"]} >= {"enumeration", "closed_forms", "inequality_chains",
                                                "worked_example", "table_reproduction"}


def test_records_csv_rows():
    rows = list(records_csv_rows(6))
    assert rows[0][:3] == ["n", "signature", "class"]
    assert len(rows) == 1 + 1 + 1 + 2 + 3 + 6
