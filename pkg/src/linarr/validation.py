"""Exhaustive checks behind ``linarr validate``.

Every check returns a ``CheckResult``; failures carry the offending tree's
signature digest, its edges and both witness arrangements so they can be
replayed.  Observations about open conjectures are reported as
informational results and never fail a run.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Callable, Iterable

from . import formulas as F
from .arrangement import LinearArrangement, sum_edge_lengths
from .constructors import (
    extreme_arrangement_bistar,
    max_arrangement_linear,
    prim_max_arrangement,
    shell_template_arrangement,
)
from .oracle import ExtremalRecord, branch_and_bound, brute_force_extrema, exact_moments, sweep_extrema
from .reference import TABLES
from .scores import TableRow, extrema_from_values, named_extrema, table_rows_for, z_key
from .tree import (
    BALANCED_BISTAR,
    BISTAR,
    CATERPILLAR,
    LINEAR,
    QUASISTAR,
    STAR,
    classify,
    degree_stats,
    from_head_vector,
)

# unlabelled trees with n = 0, 1, 2, ... vertices
TREE_COUNTS = (1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741)

EXAMPLE_HEADS = (2, 4, 4, 0, 7, 7, 4)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list[dict] = field(default_factory=list)
    informational: bool = False


@dataclass
class ValidationReport:
    n_max: int
    results: list[CheckResult]
    tables: dict[str, list[TableRow]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results if not r.informational)

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "ok": self.ok,
            "checks": [asdict(r) for r in self.results],
        }


def _failure(rec: ExtremalRecord, check: str, detail: str) -> dict:
    return {
        "check": check,
        "n": rec.n,
        "signature": rec.entry.signature.digest,
        "edges": [list(e) for e in rec.tree.edges],
        "witness_min": list(rec.witness_min.positions),
        "witness_max": list(rec.witness_max.positions),
        "detail": detail,
    }


def _per_record(name: str, records: dict[int, list[ExtremalRecord]],
                test: Callable[[ExtremalRecord], Iterable[str]]) -> CheckResult:
    failures = []
    checked = 0
    for recs in records.values():
        for rec in recs:
            checked += 1
            for problem in test(rec):
                failures.append(_failure(rec, name, problem))
    return CheckResult(name, not failures, f"{checked} classes checked, {len(failures)} violations",
                       failures)


# --- enumeration -------------------------------------------------------------------

def check_counts(records: dict[int, list[ExtremalRecord]]) -> CheckResult:
    problems = []
    for n, recs in records.items():
        if len(recs) != TREE_COUNTS[n]:
            problems.append({"n": n, "detail": f"{len(recs)} classes, expected {TREE_COUNTS[n]}"})
        total = sum(r.entry.labelled_multiplicity for r in recs)
        if total != n ** (n - 2):
            problems.append({"n": n, "detail": f"multiplicities sum to {total}, expected {n ** (n - 2)}"})
    counts = ", ".join(str(len(records[n])) for n in sorted(records))
    return CheckResult("enumeration", not problems, f"class counts {counts}", problems)


def check_witnesses(records) -> CheckResult:
    def test(rec: ExtremalRecord):
        if sum_edge_lengths(rec.tree, rec.witness_min) != rec.dmin:
            yield "witness_min does not reproduce dmin"
        if sum_edge_lengths(rec.tree, rec.witness_max) != rec.dmax:
            yield "witness_max does not reproduce dmax"
    return _per_record("witnesses", records, test)


# --- closed forms ------------------------------------------------------------------

def _formula_problems(rec: ExtremalRecord):
    t = rec.tree
    n = t.n
    cls = classify(t)
    ds = degree_stats(t)
    for flag in (LINEAR, STAR, QUASISTAR, BALANCED_BISTAR, BISTAR):
        if flag not in cls:
            continue
        forms = ("floor",) if flag == LINEAR else ("floor", "mod")
        for form in forms:
            v = F.dmin_closed_form(flag, n, k1=ds.k1, form=form)
            if v != rec.dmin:
                yield f"D_min {flag}/{form} gives {v}, oracle {rec.dmin}"
        v = F.dmax_closed_form(flag, n, k1=ds.k1)
        if v != rec.dmax:
            yield f"D_max {flag} gives {v}, oracle {rec.dmax}"
    if LINEAR in cls and F.dmax_linear(n, "mod") != rec.dmax:
        yield "D_max linear/mod disagrees with the oracle"
    horton = F.caterpillar_dmin(t.degrees)
    for form in ("shifted", "moment", "product"):
        if F.caterpillar_dmin(t.degrees, form) != horton:
            yield f"caterpillar form {form} disagrees with the Horton form"
    if CATERPILLAR in cls and rec.dmin != horton:
        yield f"caterpillar D_min {horton} != oracle {rec.dmin}"
    if CATERPILLAR not in cls and rec.dmin <= horton:
        yield f"non-caterpillar attains the caterpillar bound {horton}"
    bcr = rec.dmin - n + 1 - sum(F.horton_terms(t.degrees))
    if bcr < 0 or (bcr == 0) != (CATERPILLAR in cls):
        yield f"bcr={bcr} inconsistent with caterpillar={CATERPILLAR in cls}"
    if F.degree_method_lower_bound(n, ds.K2, ds.q) > rec.dmin:
        yield "degree-method bound exceeds D_min"
    if rec.dmax > F.edge_method_upper_bound(n, n - 1):
        yield "D_max exceeds the edge-method bound"
    if rec.dmax > F.naive_upper_bound(n, n - 1):
        yield "D_max exceeds the naive bound"


def check_formulas(records) -> CheckResult:
    return _per_record("closed_forms", records, _formula_problems)


def check_variance_forms(n_max: int) -> CheckResult:
    problems = []
    for n in range(3, n_max + 1):
        for kind, k1 in ((LINEAR, 2), (STAR, n - 1), (QUASISTAR, n - 2), (BALANCED_BISTAR, (n + 1) // 2)):
            K2 = 4 * n - 6 if kind == LINEAR else F.bistar_hubiness(n, k1) * n
            if F.hubiness_closed_form(kind, n) * n != K2:
                problems.append({"n": n, "detail": f"hubiness of {kind}"})
            if F.variance_rla_closed_form(kind, n) != F.variance_D_rla(n, int(K2)):
                problems.append({"n": n, "detail": f"variance of {kind}"})
    return CheckResult("variance_closed_forms", not problems, f"n=3..{n_max}", problems)


# --- inequality chains ---------------------------------------------------------------

def _chain_problems(rec: ExtremalRecord):
    n, dmin, dmax = rec.n, rec.dmin, rec.dmax
    E = F.expected_D_rla(n)
    if not (n - 1 <= dmin <= n * n // 4 <= E):
        yield "D_min chain violated"
    if not (E <= n * (n - 1) // 2 <= dmax <= F.dmax_balanced_bistar(n)):
        yield "D_max chain violated"
    ex = extrema_from_values(n, rec.entry.K2, dmin, dmax) if n >= 3 else None
    if ex is None:
        return
    star = named_extrema(STAR, n)
    lin = named_extrema(LINEAR, n)
    if not (0 <= ex.delta_rla <= ex.delta_max):
        yield "0 <= Delta_rla <= Delta_max violated"
    if not (1 <= ex.gamma_rla <= ex.gamma_max):
        yield "1 <= Gamma_rla <= Gamma_max violated"
    if not star.delta_max <= ex.delta_max <= F.dmax_balanced_bistar(n) - (n - 1):
        yield "Delta_max star/upper chain violated"
    if not star.gamma_max <= ex.gamma_max <= Fraction(F.dmax_balanced_bistar(n), n - 1):
        yield "Gamma_max star/upper chain violated"
    if not lin.v_rla <= ex.v_rla <= star.v_rla:
        yield "V_rla linear/star chain violated"
    if not lin.z_min_key <= ex.z_min_key <= star.z_min_key <= 0:
        yield "z_min chain violated"
    upper = z_key(F.dmax_balanced_bistar(n) - E, lin.v_rla)
    if not 0 <= star.z_max_key <= ex.z_max_key <= upper:
        yield "z_max chain violated"


def check_chains(records) -> CheckResult:
    return _per_record("inequality_chains", records, _chain_problems)


def check_extremal_theorems(records) -> CheckResult:
    problems = []
    for n, recs in records.items():
        flags = [classify(r.tree) for r in recs]
        lo = min(r.dmax for r in recs)
        hi = max(r.dmax for r in recs)
        top_min = max(r.dmin for r in recs)
        if lo != n * (n - 1) // 2 or not any(STAR in f and r.dmax == lo for r, f in zip(recs, flags)):
            problems.append({"n": n, "detail": f"min D_max={lo}, expected C(n,2) by the star"})
        if hi != F.dmax_balanced_bistar(n) or not any(
                BALANCED_BISTAR in f and r.dmax == hi for r, f in zip(recs, flags)):
            problems.append({"n": n, "detail": f"max D_max={hi}, expected balanced bistar value"})
        if top_min != n * n // 4 or not any(STAR in f and r.dmin == top_min for r, f in zip(recs, flags)):
            problems.append({"n": n, "detail": f"max D_min={top_min}, expected floor(n^2/4) by the star"})
    return CheckResult("extremal_theorems", not problems, f"n={min(records)}..{max(records)}", problems)


# --- independent oracles -----------------------------------------------------------------

def check_oracle_equivalence(records, n_limit: int = 9) -> CheckResult:
    def test(rec: ExtremalRecord):
        if rec.n > n_limit:
            return
        bf = brute_force_extrema(rec.tree)
        if bf != (rec.dmin, rec.dmax):
            yield f"brute force {bf} != sweep {(rec.dmin, rec.dmax)}"
        bb = branch_and_bound(rec.tree)
        if not bb.proven or bb.dmin != rec.dmin:
            yield f"branch and bound {bb.dmin} (proven={bb.proven}) != sweep {rec.dmin}"
    sub = {n: r for n, r in records.items() if n <= n_limit}
    res = _per_record("oracle_equivalence", sub, test)
    res.detail = f"n<={n_limit}: " + res.detail
    return res


def check_moments(records, n_limit: int = 7) -> CheckResult:
    def test(rec: ExtremalRecord):
        if rec.n > n_limit:
            return
        mean, var = exact_moments(rec.tree)
        if mean != F.expected_D_rla(rec.n):
            yield f"exact mean {mean} != (n^2-1)/3"
        if var != F.variance_D_rla(rec.n, rec.entry.K2):
            yield f"exact variance {var} != formula {F.variance_D_rla(rec.n, rec.entry.K2)}"
    sub = {n: r for n, r in records.items() if n <= n_limit}
    res = _per_record("exact_moments", sub, test)
    res.detail = f"n<={n_limit}: " + res.detail
    return res


def check_constructors(records, n_limit: int = 9) -> CheckResult:
    problems = []
    for n in range(2, n_limit + 1):
        c = max_arrangement_linear(n)
        if c.claimed_D != brute_force_extrema(c.tree)[1]:
            problems.append({"n": n, "detail": "linear maximum"})
        for k1 in range(-(-n // 2), n):
            c = extreme_arrangement_bistar(n, k1)
            if c.claimed_D != brute_force_extrema(c.tree)[1]:
                problems.append({"n": n, "detail": f"bistar k1={k1}"})
        c = prim_max_arrangement(n)
        if c.claimed_D != brute_force_extrema(c.tree)[1] or BALANCED_BISTAR not in classify(c.tree):
            problems.append({"n": n, "detail": "greedy maximum"})
    for n, recs in records.items():
        if n > n_limit:
            continue
        for rec in recs:
            is_star = STAR in classify(rec.tree)
            for v in range(1, n + 1):
                D = shell_template_arrangement(rec.tree, v).claimed_D
                if D < n * (n - 1) // 2 or (is_star and D != rec.dmax):
                    problems.append({"n": n, "signature": rec.entry.signature.digest,
                                     "detail": f"shell template from {v} gives {D}"})
    return CheckResult("constructors", not problems, f"n<={n_limit}", problems)


# --- worked example ----------------------------------------------------------------------

def _sqrt_exact(x: Fraction):
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return math.sqrt(x)


@dataclass(frozen=True)
class WorkedExample:
    dmin: int
    dmax: int
    K2: int
    q: int
    e_rla: Fraction
    v_rla: Fraction
    original_D: int
    min_D: int
    third_layout_implied_D: dict


def worked_example() -> WorkedExample:
    t = from_head_vector(EXAMPLE_HEADS)
    ds = degree_stats(t)
    dmin, dmax = brute_force_extrema(t)
    E = F.expected_D_rla(t.n)
    V = F.variance_D_rla(t.n, ds.K2)
    # reference third layout: D=20, Delta=10, Gamma=2, z=2*sqrt(15/37); each implies its own D
    implied = {
        "D": 20,
        "delta": dmin + 10,
        "gamma": 2 * dmin,
        "z": E + _sqrt_exact(4 * Fraction(15, 37) * V),
    }
    return WorkedExample(dmin, dmax, ds.K2, ds.q, E, V,
                         sum_edge_lengths(t, LinearArrangement.identity(t.n)),
                         branch_and_bound(t).dmin, implied)


def check_worked_example() -> CheckResult:
    t = from_head_vector(EXAMPLE_HEADS)
    w = worked_example()
    problems = []
    expect = {"dmin": 8, "K2": 26, "q": 6, "e_rla": Fraction(16), "v_rla": Fraction(148, 15),
              "original_D": 10}
    for k, v in expect.items():
        if getattr(w, k) != v:
            problems.append({"detail": f"{k}={getattr(w, k)}, expected {v}"})
    for label, D, delta, gamma, zsq in (("original", 10, 2, Fraction(5, 4), -9),
                                        ("minimum", 8, 0, Fraction(1), -16)):
        if D - w.dmin != delta or Fraction(D, w.dmin) != gamma:
            problems.append({"detail": f"{label} layout Delta/Gamma"})
        if z_key(D - w.e_rla, w.v_rla) != zsq * Fraction(15, 37):
            problems.append({"detail": f"{label} layout z"})
    if sum_edge_lengths(t, branch_and_bound(t).arrangement) != 8:
        problems.append({"detail": "minimum arrangement"})
    resolution = (f"brute-force D_max={w.dmax}; reference value 26 "
                  f"{'matches' if w.dmax == 26 else 'does not match'}; third reference layout implies "
                  f"D={w.third_layout_implied_D['D']} (D), {w.third_layout_implied_D['delta']} (Delta), "
                  f"{w.third_layout_implied_D['gamma']} (Gamma), {w.third_layout_implied_D['z']} (z), "
                  f"so that layout is not a maximum arrangement")
    return CheckResult("worked_example", not problems, resolution, problems)


# --- tables --------------------------------------------------------------------------------

def round2(x) -> Decimal:
    if isinstance(x, Fraction):
        d = Decimal(x.numerator) / Decimal(x.denominator)
    elif isinstance(x, float):
        d = Decimal(repr(x))
    else:
        d = Decimal(str(x))
    return d.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def _row_key(kind, K2, k1, n1, L, mean_l, dmin, dmax):
    return (kind, K2, k1, n1, L, round2(Decimal(mean_l) if isinstance(mean_l, str) else mean_l),
            dmin, dmax)


def compare_table(row: TableRow) -> list[str]:
    ref = TABLES[row.table].get(row.n)
    if ref is None:
        return []
    col, maximum, rows = ref
    problems = []
    if round2(row.reference) != round2(Decimal(col)):
        problems.append(f"named-tree column {round2(row.reference)} != printed {col}")
    if round2(row.maximum) != round2(Decimal(maximum)):
        problems.append(f"maximum {round2(row.maximum)} != printed {maximum}")
    got = sorted(_row_key(r.kind, r.K2, r.k1, r.n1, r.L, r.mean_l, r.dmin, r.dmax) for r in row.attaining)
    want = sorted(_row_key(*r) for r in rows)
    if got != want:
        problems.append(f"attaining trees differ: got {got}, printed {want}")
    return problems


def check_tables(tables: dict[str, list[TableRow]]) -> CheckResult:
    problems = []
    checked = 0
    for rows in tables.values():
        for row in rows:
            for p in compare_table(row):
                problems.append({"table": row.table, "n": row.n, "detail": p})
            checked += row.n in TABLES[row.table]
    return CheckResult("table_reproduction", not problems, f"{checked} rows compared", problems)


# --- open conjectures (reported only) -------------------------------------------------------

def observe_conjectures(records, tables: dict[str, list[TableRow]]) -> list[CheckResult]:
    out = []
    gamma_unique = [r.n for r in tables.get("gamma", [])
                    if not (len(r.attaining) == 1 and r.attaining[0].kind.startswith("linear"))]
    out.append(CheckResult(
        "conjecture_gamma_linear", not gamma_unique,
        "linear tree is the unique Gamma_max maximizer" if not gamma_unique
        else f"other maximizers at n={gamma_unique}", informational=True))
    zb = [r.n for r in tables.get("z", []) if not any("b-bistar" in a.kind for a in r.attaining)]
    out.append(CheckResult(
        "observation_zmax_bbistar", not zb,
        "balanced bistar attains max D_z,max" if not zb else f"balanced bistar beaten at n={zb}",
        informational=True))
    # the combined chain Delta_rla <= Delta_max(star) is not implied by its parts
    broken = []
    for n, recs in records.items():
        if n < 3:
            continue
        star = named_extrema(STAR, n)
        for rec in recs:
            ex = extrema_from_values(n, rec.entry.K2, rec.dmin, rec.dmax)
            if ex.delta_rla > star.delta_max or ex.gamma_rla > star.gamma_max:
                broken.append((n, rec.entry.signature.digest))
    out.append(CheckResult(
        "observation_combined_rla_chain", not broken,
        f"{len(broken)} classes with Delta_rla > Delta_max(star) or Gamma_rla > Gamma_max(star)",
        [{"n": n, "signature": s} for n, s in broken[:20]], informational=True))
    return out


# --- driver ---------------------------------------------------------------------------------

def run_validation(n_max: int = 10, *, threads: int | None = None, long_run: bool = False,
                   check_tables_flag: bool = True, progress: Callable[[str], None] | None = None
                   ) -> ValidationReport:
    if n_max > 10 and not long_run:
        raise ValueError("n_max above 10 needs the long-run flag")
    say = progress or (lambda msg: None)
    records: dict[int, list[ExtremalRecord]] = {}
    for n in range(2, n_max + 1):
        say(f"sweeping n={n}")
        records[n] = sweep_extrema(n, threads=threads, allow_large=long_run)
    tables = {"delta": [], "gamma": [], "z": []}
    for n in range(3, n_max + 1):
        for name, row in table_rows_for(n, records[n]).items():
            tables[name].append(row)
    say("checking")
    results = [
        check_counts(records),
        check_witnesses(records),
        check_formulas(records),
        check_variance_forms(n_max),
        check_chains(records),
        check_extremal_theorems(records),
        check_oracle_equivalence(records),
        check_moments(records),
        check_constructors(records),
        check_worked_example(),
    ]
    if check_tables_flag:
        results.append(check_tables(tables))
    results.extend(observe_conjectures(records, tables))
    return ValidationReport(n_max, results, tables)


def records_csv_rows(n_max: int, threads: int | None = None, long_run: bool = False):
    """Per-class records for ``--emit``."""
    header = ["n", "signature", "class", "k1", "K2", "q", "n1", "diameter", "mean_path_length",
              "multiplicity", "dmin", "dmax", "witness_min", "witness_max"]
    yield header
    for n in range(2, n_max + 1):
        for rec in sweep_extrema(n, threads=threads, allow_large=long_run):
            e = rec.entry
            ds = degree_stats(e.representative)
            yield [n, e.signature.digest, classify(e.representative).tag, ds.k1, e.K2, ds.q,
                   ds.n1, e.stats.diameter, str(e.stats.mean_path_length), e.labelled_multiplicity,
                   rec.dmin, rec.dmax, " ".join(map(str, rec.witness_min.positions)),
                   " ".join(map(str, rec.witness_max.positions))]

