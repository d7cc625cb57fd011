"""Command-line interface: ``linarr <subcommand> ...``.

Subcommands: analyze, extremal, scan, validate, random, tables.  Exit status
is 0 on success, 1 when a validation check fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import formulas as F
from .arrangement import (
    LinearArrangement,
    edge_lengths,
    parse_arrangement,
    sample_sum_edge_lengths,
    sum_edge_lengths,
)
from .catalog import THREADS_ENV, default_threads, dump_catalog, enumerate_unlabelled
from .constructors import (
    ConstructedExtremum,
    extreme_arrangement_bistar,
    max_arrangement_linear,
    prim_max_arrangement,
    shell_template_arrangement,
)
from .oracle import BRUTE_FORCE_MAX_N, branch_and_bound, brute_force_extrema
from .scores import (
    asymptotic_limits,
    kind_label,
    extrema_from_values,
    score_arrangement,
    z_max_upper_bound,
)
from .tree import (
    BALANCED_BISTAR,
    BISTAR,
    CATERPILLAR,
    LINEAR,
    QUASISTAR,
    STAR,
    FreeTree,
    TreeError,
    bistar_tree,
    classify,
    degree_stats,
    parse_edge_list,
    parse_head_vector,
    path_tree,
    star_tree,
)
from .validation import records_csv_rows, round2, run_validation

NAMED = (LINEAR, BALANCED_BISTAR, QUASISTAR, STAR)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    args: argparse.Namespace


class UsageError(Exception):
    pass


def _num(x):
    """JSON/CSV value: ints stay ints, other rationals become floats."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    return x


def _exact(x: Fraction) -> str:
    return str(x)


# --- input ------------------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _parse_tree(text: str, fmt: str) -> FreeTree:
    if fmt == "auto":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        fmt = "heads" if len(lines) == 1 and len(lines[0].split()) > 1 else "edges"
    return parse_head_vector(text) if fmt == "heads" else parse_edge_list(text)


def load_tree(args) -> FreeTree:
    if getattr(args, "heads", None):
        return _parse_tree(args.heads, "heads")
    if not getattr(args, "tree", None):
        raise UsageError("give a tree file (or '-') or --heads")
    return _parse_tree(_read_text(args.tree), args.format)


# --- analyze -----------------------------------------------------------------------------

def _closed_forms(t: FreeTree) -> dict:
    cls = classify(t)
    ds = degree_stats(t)
    out = {}
    for flag in (LINEAR, STAR, QUASISTAR, BALANCED_BISTAR, BISTAR):
        if flag in cls:
            out[flag] = {"dmin": F.dmin_closed_form(flag, t.n, k1=ds.k1),
                         "dmax": F.dmax_closed_form(flag, t.n, k1=ds.k1)}
    if CATERPILLAR in cls:
        out[CATERPILLAR] = {"dmin": F.caterpillar_dmin(t.degrees)}
    out["bounds"] = {
        "dmin_lower_caterpillar": F.caterpillar_dmin(t.degrees),
        "dmin_lower_degree_method": _exact(F.degree_method_lower_bound(t.n, ds.K2, ds.q)),
        "dmax_upper_naive": F.naive_upper_bound(t.n, t.n - 1) if t.n > 1 else 0,
        "dmax_upper_edge_method": F.edge_method_upper_bound(t.n, t.n - 1) if t.n > 1 else 0,
        "dmax_upper_balanced_bistar": F.dmax_balanced_bistar(t.n) if t.n > 1 else 0,
    }
    return out


def cmd_analyze(args) -> tuple[dict, int]:
    t = load_tree(args)
    cls = classify(t)
    ds = degree_stats(t)
    report: dict = {
        "n": t.n,
        "edges": [list(e) for e in t.edges],
        "class": cls.tag,
        "flags": sorted(cls.flags),
        "kind": kind_label(cls),
        "degree_stats": {"k1": ds.k1, "k2": ds.k2, "K2": ds.K2, "q": ds.q, "qprime": ds.qprime,
                         "phi": ds.phi, "n1": ds.n1, "mean_k2": _exact(ds.mean_k2)},
        "e_rla": _exact(F.expected_D_rla(t.n)),
        "v_rla": _exact(F.variance_D_rla(t.n, ds.K2)),
        "closed_forms": _closed_forms(t),
    }
    dmin = None
    if t.n <= args.cap:
        if t.n <= BRUTE_FORCE_MAX_N:
            dmin, dmax = brute_force_extrema(t)
            report["oracle"] = {"method": "brute_force", "dmin": dmin, "dmax": dmax}
        else:
            r = branch_and_bound(t, budget=args.budget)
            report["oracle"] = {"method": "branch_and_bound", "dmin": r.dmin, "proven": r.proven}
            dmin = r.dmin if r.proven else None
    if args.arrangement:
        a = parse_arrangement(_read_text(args.arrangement), t.n)
    else:
        a = LinearArrangement.identity(t.n)
    report["arrangement"] = list(a.positions)
    report["D"] = sum_edge_lengths(t, a)
    if dmin is not None and t.n >= 3:
        s = score_arrangement(t, a, dmin)
        report["scores"] = {"D": s.D, "delta": s.delta, "gamma": _exact(s.gamma), "z": s.z}
    return report, 0


def _print_analyze(report: dict, out) -> None:
    out.write(f"n={report['n']} class={report['class']} flags={','.join(report['flags'])}\n")
    ds = report["degree_stats"]
    out.write("degree stats: " + " ".join(f"{k}={v}" for k, v in ds.items()) + "\n")
    out.write(f"E_rla={report['e_rla']} V_rla={report['v_rla']}\n")
    for name, vals in report["closed_forms"].items():
        out.write(f"{name}: " + " ".join(f"{k}={v}" for k, v in vals.items()) + "\n")
    if "oracle" in report:
        out.write("oracle: " + " ".join(f"{k}={v}" for k, v in report["oracle"].items()) + "\n")
    out.write(f"arrangement: {' '.join(map(str, report['arrangement']))}  D={report['D']}\n")
    if "scores" in report:
        out.write("scores: " + " ".join(f"{k}={v}" for k, v in report["scores"].items()) + "\n")


# --- extremal -----------------------------------------------------------------------------

def cmd_extremal(args) -> tuple[dict, int]:
    c: ConstructedExtremum
    if args.kind == "linear":
        c = max_arrangement_linear(args.n)
    elif args.kind == "bistar":
        if args.k1 is None:
            raise UsageError("bistar needs --k1")
        c = extreme_arrangement_bistar(args.n, args.k1)
    elif args.kind == "prim":
        c = prim_max_arrangement(args.n)
    else:
        t = load_tree(args)
        c = shell_template_arrangement(t, args.vertex)
    lengths = edge_lengths(c.tree, c.arrangement)
    return {
        "kind": c.kind,
        "n": c.tree.n,
        "edges": [list(e) for e in c.tree.edges],
        "positions": list(c.arrangement.positions),
        "order": list(c.arrangement.order),
        "edge_lengths": [[u, v, d] for (u, v), d in zip(c.tree.edges, lengths)],
        "claimed_D": c.claimed_D,
        "trace": [[list(e), d] for e, d in c.trace],
    }, 0


# --- scan ---------------------------------------------------------------------------------

SCAN_HEADER = ["n", "class", "k1", "K2", "dmin", "dmax", "e_rla_num", "e_rla_den",
               "v_rla_num", "v_rla_den", "d0_num", "d0_den", "dmax_upper_naive",
               "dmax_upper_edge_method", "z_max_upper_bound", "delta_max", "gamma_max",
               "z_min", "z_max", "gamma_max_gap", "z_min_gap", "z_max_gap"]


def _named_tree(kind: str, n: int) -> FreeTree | None:
    if kind == LINEAR:
        return path_tree(n)
    if kind == STAR:
        return star_tree(n)
    k1 = n - 2 if kind == QUASISTAR else (n + 1) // 2
    if n < 4 and kind == QUASISTAR:
        return None
    return bistar_tree(n, k1)


def scan_rows(n_min: int, n_max: int) -> tuple[list[str], list[list]]:
    """One row per (n, named class); z columns are blank where the variance is zero."""
    limits = asymptotic_limits()
    rows = []
    for n in range(max(n_min, 2), n_max + 1):
        E = F.expected_D_rla(n)
        naive = F.naive_upper_bound(n, n - 1)
        edge = F.edge_method_upper_bound(n, n - 1)
        zub = z_max_upper_bound(n) if n >= 3 else ""
        for kind in NAMED:
            t = _named_tree(kind, n)
            if t is None:
                continue
            ds = degree_stats(t)
            lo = F.dmin_closed_form(kind, n, k1=ds.k1)
            hi = F.dmax_closed_form(kind, n, k1=ds.k1)
            V = F.variance_D_rla(n, ds.K2)
            D0 = F.degree_method_lower_bound(n, ds.K2, ds.q)
            row = [n, kind, ds.k1, ds.K2, lo, hi, E.numerator, E.denominator,
                   V.numerator, V.denominator, D0.numerator, D0.denominator, naive, edge, zub,
                   hi - lo, float(Fraction(hi, lo))]
            if V > 0:
                ex = extrema_from_values(n, ds.K2, lo, hi)
                row += [ex.z_min, ex.z_max]
                values = {"gamma_max": float(ex.gamma_max), "z_min": ex.z_min, "z_max": ex.z_max}
                row += [values[s] - limits[s][kind] if kind in limits[s] else ""
                        for s in ("gamma_max", "z_min", "z_max")]
            else:
                row += ["", "", "", "", ""]
            rows.append(row)
    return SCAN_HEADER, rows


def _emit_table(header: list[str], rows: list[list], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([dict(zip(header, r)) for r in rows], out, indent=1)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_scan(args, out) -> int:
    header, rows = scan_rows(args.n_min, args.n_max)
    _emit_table(header, rows, args.output_format, out)
    return 0


# --- tables ----------------------------------------------------------------------------------

TABLE_HEADER = ["table", "n", "named_tree_value", "maximum", "kind", "K2", "k1", "n1", "L",
                "mean_path_length", "dmin", "dmax"]


def table_csv_rows(tables) -> list[list]:
    rows = []
    for name in ("delta", "gamma", "z"):
        for row in tables[name]:
            for i, tr in enumerate(row.attaining):
                head = [name, row.n, str(round2(row.reference)), str(round2(row.maximum))] if i == 0 \
                    else [name, row.n, "", ""]
                rows.append(head + [tr.kind, tr.K2, tr.k1, tr.n1, tr.L, str(round2(tr.mean_l)),
                                    tr.dmin, tr.dmax])
    return rows


def cmd_tables(args, out) -> int:
    from .scores import table_maxima

    if args.n_max > 10 and not args.long:
        raise UsageError("n_max above 10 needs --long")
    tables = table_maxima(args.n_max, threads=args.threads, allow_large=args.long)
    _emit_table(TABLE_HEADER, table_csv_rows(tables), args.output_format, out)
    return 0


# --- validate -------------------------------------------------------------------------------

def cmd_validate(args, out) -> int:
    if args.n_max > 10 and not args.long:
        raise UsageError("n_max above 10 is an hours-scale run; pass --long")
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    report = run_validation(args.n_max, threads=args.threads, long_run=args.long,
                            check_tables_flag=args.check_tables, progress=progress)
    if args.emit:
        with open(args.emit, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(
                records_csv_rows(args.n_max, args.threads, args.long))
    if args.catalog:
        with open(args.catalog, "w") as fh:
            for n in range(2, args.n_max + 1):
                dump_catalog(enumerate_unlabelled(n, threads=args.threads, allow_large=args.long), fh)
    if args.output_format == "json":
        json.dump(report.to_dict(), out, indent=1, default=str)
        out.write("\n")
    else:
        for r in report.results:
            status = "INFO" if r.informational else ("PASS" if r.passed else "FAIL")
            out.write(f"{status} {r.name}: {r.detail}\n")
            if not r.passed:
                for f in r.failures[:10]:
                    out.write("    " + json.dumps(f, default=str) + "\n")
        if args.check_tables:
            buf = io.StringIO()
            _emit_table(TABLE_HEADER, table_csv_rows(report.tables), "csv", buf)
            out.write("\n" + buf.getvalue())
        out.write(f"\n{'OK' if report.ok else 'FAILED'}\n")
    return 0 if report.ok else 1


# --- random ---------------------------------------------------------------------------------

def cmd_random(args) -> tuple[dict, int]:
    t = load_tree(args)
    if t.n < 3:
        raise UsageError("need n >= 3")
    rng = np.random.default_rng(args.seed)
    D = sample_sum_edge_lengths(t, args.samples, rng)
    ds = degree_stats(t)
    E = F.expected_D_rla(t.n)
    V = F.variance_D_rla(t.n, ds.K2)
    mean = float(D.mean())
    var = float(D.var(ddof=1))
    z = (D - float(E)) / float(V) ** 0.5
    zmean = float(z.mean())
    stderr = float(z.std(ddof=1)) / args.samples ** 0.5
    return {
        "n": t.n,
        "samples": args.samples,
        "seed": args.seed,
        "mean_D": mean,
        "expected_D": _exact(E),
        "mean_rel_error": abs(mean - float(E)) / float(E),
        "var_D": var,
        "expected_var": _exact(V),
        "var_rel_error": abs(var - float(V)) / float(V),
        "mean_z": zmean,
        "z_standard_error": stderr,
        "mean_z_within_3se": abs(zmean) <= 3 * stderr,
    }, 0


# --- main -----------------------------------------------------------------------------------

def _add_tree_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("tree", nargs="?", help="tree file ('-' for stdin)")
    p.add_argument("--heads", help="inline head vector, e.g. '2 4 4 0 7 7 4'")
    p.add_argument("--format", choices=("auto", "edges", "heads"), default="auto",
                   help="tree file format (default: auto)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linarr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    a = sub.add_parser("analyze", help="class, degree stats, closed forms, extrema and scores of one tree")
    _add_tree_input(a)
    a.add_argument("--arrangement", help="file with the position of each vertex (default: identity)")
    a.add_argument("--cap", type=int, default=BRUTE_FORCE_MAX_N + 10,
                   help="largest n for which exact extrema are computed")
    a.add_argument("--budget", type=int, default=2_000_000, help="branch-and-bound node budget")
    a.add_argument("--json", action="store_true")

    e = sub.add_parser("extremal", help="explicit maximum arrangements")
    e.add_argument("kind", choices=("linear", "bistar", "prim", "shell"))
    e.add_argument("--n", type=int)
    e.add_argument("--k1", type=int)
    e.add_argument("--vertex", type=int, default=1, help="start vertex for the shell template")
    _add_tree_input(e)

    s = sub.add_parser("scan", help="closed forms, bounds, moments and limit gaps per n")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, default=100)
    s.add_argument("--output-format", choices=("csv", "json"), default="csv")

    v = sub.add_parser("validate", help="exhaustive validation over all trees up to n_max")
    v.add_argument("--n-max", type=int, default=10)
    v.add_argument("--threads", type=int, default=None,
                   help=f"sweep threads (default: ${THREADS_ENV} or the CPU count)")
    v.add_argument("--emit", help="write per-class records as CSV")
    v.add_argument("--catalog", help="write the catalog as JSON lines")
    v.add_argument("--check-tables", action=argparse.BooleanOptionalAction, default=True)
    v.add_argument("--long", action="store_true", help="allow n_max = 11 (hours-scale)")
    v.add_argument("--output-format", choices=("text", "json"), default="text")
    v.add_argument("-v", "--verbose", action="store_true")

    r = sub.add_parser("random", help="Monte-Carlo moments of D over uniform arrangements")
    _add_tree_input(r)
    r.add_argument("--samples", type=int, default=100_000)
    r.add_argument("--seed", type=int, default=0)

    tb = sub.add_parser("tables", help="maxima of Delta_max, Gamma_max and D_z,max as CSV")
    tb.add_argument("--n-max", type=int, default=10)
    tb.add_argument("--threads", type=int, default=None)
    tb.add_argument("--long", action="store_true")
    tb.add_argument("--output-format", choices=("csv", "json"), default="csv")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    config = RunConfig(args.subcommand, args)
    try:
        if getattr(args, "threads", None) is None and hasattr(args, "threads"):
            args.threads = default_threads()
        if config.subcommand == "analyze":
            report, code = cmd_analyze(args)
            if args.json:
                json.dump(report, out, indent=1)
                out.write("\n")
            else:
                _print_analyze(report, out)
            return code
        if config.subcommand == "extremal":
            if args.kind != "shell" and args.n is None:
                raise UsageError(f"{args.kind} needs --n")
            report, code = cmd_extremal(args)
            json.dump(report, out, indent=1)
            out.write("\n")
            return code
        if config.subcommand == "random":
            report, code = cmd_random(args)
            json.dump(report, out, indent=1)
            out.write("\n")
            return code
        if config.subcommand == "scan":
            return cmd_scan(args, out)
        if config.subcommand == "tables":
            return cmd_tables(args, out)
        return cmd_validate(args, out)
    except (UsageError, TreeError, ValueError) as exc:
        print(f"linarr: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
