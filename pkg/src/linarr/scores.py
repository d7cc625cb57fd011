"""Optimality scores of an arrangement and their extremes over all arrangements.

Delta and Gamma stay exact.  The z-score is the only float and is taken from
exact moments at the last step; comparisons between z values use the exact
key ``sign(x) * x**2 / V`` so ties are detected without rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arrangement import LinearArrangement, sum_edge_lengths
from .formulas import (
    dmax_balanced_bistar,
    dmax_linear,
    dmax_quasistar,
    dmax_star,
    dmin_balanced_bistar,
    dmin_linear,
    dmin_quasistar,
    dmin_star,
    expected_D_rla,
    variance_D_rla,
    variance_rla_closed_form,
)
from .tree import (
    BALANCED_BISTAR,
    BISTAR,
    CATERPILLAR,
    LINEAR,
    QUASISTAR,
    STAR,
    FreeTree,
    TreeClass,
    classify,
)


class ScoreError(ValueError):
    pass


def z_value(diff: Fraction, variance: Fraction) -> float:
    """``diff / sqrt(variance)`` rounded once from the exact square."""
    if variance <= 0:
        raise ScoreError("variance must be positive")
    return math.copysign(math.sqrt(diff * diff / variance), diff)


def z_key(diff: Fraction, variance: Fraction) -> Fraction:
    """Exact quantity with the same order as the z-score."""
    return diff * abs(diff) / variance


@dataclass(frozen=True)
class ScoreReport:
    D: int
    delta: int
    gamma: Fraction
    z: float
    e_rla: Fraction
    v_rla: Fraction


def score_arrangement(t: FreeTree, a: LinearArrangement, dmin: int) -> ScoreReport:
    if t.n < 3:
        raise ScoreError("scores need n >= 3 (the variance vanishes below)")
    D = sum_edge_lengths(t, a)
    if dmin <= 0:
        raise ScoreError(f"dmin must be positive, got {dmin}")
    if dmin > D:
        raise ScoreError(f"dmin={dmin} exceeds the arrangement's D={D}")
    K2 = sum(k * k for k in t.degrees)
    E = expected_D_rla(t.n)
    V = variance_D_rla(t.n, K2)
    return ScoreReport(D, D - dmin, Fraction(D, dmin), z_value(D - E, V), E, V)


@dataclass(frozen=True)
class ScoreExtrema:
    delta_max: int
    gamma_max: Fraction
    z_min: float
    z_max: float
    delta_rla: Fraction
    gamma_rla: Fraction
    dmin: int
    dmax: int
    e_rla: Fraction
    v_rla: Fraction

    @property
    def z_min_key(self) -> Fraction:
        return z_key(self.dmin - self.e_rla, self.v_rla)

    @property
    def z_max_key(self) -> Fraction:
        return z_key(self.dmax - self.e_rla, self.v_rla)


def extrema_from_values(n: int, K2: int, dmin: int, dmax: int) -> ScoreExtrema:
    E = expected_D_rla(n)
    V = variance_D_rla(n, K2)
    return ScoreExtrema(
        delta_max=dmax - dmin,
        gamma_max=Fraction(dmax, dmin),
        z_min=z_value(dmin - E, V),
        z_max=z_value(dmax - E, V),
        delta_rla=E - dmin,
        gamma_rla=E / dmin,
        dmin=dmin,
        dmax=dmax,
        e_rla=E,
        v_rla=V,
    )


def score_extrema(record) -> ScoreExtrema:
    """Score extremes of an ``ExtremalRecord`` (anything with entry, dmin, dmax)."""
    return extrema_from_values(record.entry.n, record.entry.K2, record.dmin, record.dmax)


# --- named trees and limits ----------------------------------------------------------

_DMIN = {LINEAR: dmin_linear, STAR: dmin_star, QUASISTAR: dmin_quasistar,
         BALANCED_BISTAR: dmin_balanced_bistar}
_DMAX = {LINEAR: dmax_linear, STAR: dmax_star, QUASISTAR: dmax_quasistar,
         BALANCED_BISTAR: dmax_balanced_bistar}


def named_extrema(kind: str, n: int) -> ScoreExtrema:
    """Score extremes of a named tree from closed forms only."""
    if kind not in _DMIN:
        raise ScoreError(f"no closed forms for {kind!r}")
    E = expected_D_rla(n)
    V = variance_rla_closed_form(kind, n)
    lo, hi = _DMIN[kind](n), _DMAX[kind](n)
    return ScoreExtrema(hi - lo, Fraction(hi, lo), z_value(lo - E, V), z_value(hi - E, V),
                        E - lo, E / lo, lo, hi, E, V)


def asymptotic_limits() -> dict[str, dict[str, float]]:
    return {
        "gamma_max": {BALANCED_BISTAR: 6.0, STAR: 2.0, QUASISTAR: 2.0},
        "z_min": {BALANCED_BISTAR: -1.25 * math.sqrt(10), STAR: -math.sqrt(5) / 2,
                  QUASISTAR: -math.sqrt(5) / 2},
        "z_max": {BALANCED_BISTAR: 2.5 * math.sqrt(10), STAR: math.sqrt(5),
                  QUASISTAR: math.sqrt(5)},
    }


def finite_score(score: str, kind: str, n: int) -> float:
    ex = named_extrema(kind, n)
    if score == "gamma_max":
        return float(ex.gamma_max)
    if score == "z_min":
        return ex.z_min
    if score == "z_max":
        return ex.z_max
    raise ScoreError(f"unknown score {score!r}")


def z_max_upper_bound(n: int) -> float:
    """(D_max of the balanced bistar - E) over the linear tree's standard deviation."""
    return z_value(dmax_balanced_bistar(n) - expected_D_rla(n), variance_rla_closed_form(LINEAR, n))


# --- table reproduction -------------------------------------------------------------

def kind_label(cls: TreeClass) -> str:
    names = [("linear", LINEAR), ("star", STAR), ("quasi", QUASISTAR), ("b-bistar", BALANCED_BISTAR)]
    named = [label for label, flag in names if flag in cls]
    if named:
        return " ".join(named)
    if BISTAR in cls:
        return "bistar"
    if CATERPILLAR in cls:
        return "cat"
    return "other"


@dataclass(frozen=True)
class TreeRow:
    kind: str
    K2: int
    k1: int
    n1: int
    L: int
    mean_l: Fraction
    dmin: int
    dmax: int
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class TableRow:
    table: str          # "delta", "gamma" or "z"
    n: int
    reference: object   # value for the named tree heading the table's second column
    maximum: object
    attaining: tuple[TreeRow, ...]


TABLE_REFERENCE_KIND = {"delta": BALANCED_BISTAR, "gamma": LINEAR, "z": BALANCED_BISTAR}


def _tree_row(record) -> TreeRow:
    e = record.entry
    return TreeRow(kind_label(classify(e.representative)), e.K2, e.stats.k1, e.stats.n1,
                   e.stats.diameter, e.stats.mean_path_length, record.dmin, record.dmax,
                   tuple(sorted(e.representative.degrees, reverse=True)))


def table_rows_for(n: int, records: Iterable) -> dict[str, TableRow]:
    """Maximum of each score extremum over the classes of one n, with all ties."""
    records = list(records)
    ex = [score_extrema(r) for r in records]
    keys = {
        "delta": [e.delta_max for e in ex],
        "gamma": [e.gamma_max for e in ex],
        "z": [e.z_max_key for e in ex],
    }
    shown = {
        "delta": lambda e: e.delta_max,
        "gamma": lambda e: e.gamma_max,
        "z": lambda e: e.z_max,
    }
    out = {}
    for table, ks in keys.items():
        top = max(ks)
        winners = [i for i, k in enumerate(ks) if k == top]
        rows = sorted((_tree_row(records[i]) for i in winners),
                      key=lambda r: (r.K2, r.k1, r.n1, r.L, r.mean_l, r.degrees))
        ref = named_extrema(TABLE_REFERENCE_KIND[table], n)
        out[table] = TableRow(table, n, shown[table](ref), shown[table](ex[winners[0]]), tuple(rows))
    return out


def table_maxima(n_max: int, n_min: int = 3, *, threads: int | None = None,
                 allow_large: bool = False) -> dict[str, list[TableRow]]:
    from .oracle import sweep_extrema

    out: dict[str, list[TableRow]] = {"delta": [], "gamma": [], "z": []}
    for n in range(n_min, n_max + 1):
        rows = table_rows_for(n, sweep_extrema(n, threads=threads, allow_large=allow_large))
        for table, row in rows.items():
            out[table].append(row)
    return out
