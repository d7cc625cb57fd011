"""Unlabelled trees of n vertices, found by sweeping every Prüfer code.

Every labelled tree on 1..n is visited once.  Reading its labels as positions
makes it an arrangement of its unlabelled tree, so the same sweep yields the
exact D_min and D_max of every class (see ``oracle.sweep_extrema``).

Two backends are provided.  ``"python"`` keeps the literal two-level table
(K2, then degree spectrum, then a list of signatures) and is used as the
reference for small n.  ``"numba"`` runs a compiled kernel over first-symbol
blocks of the code space, optionally on several threads, and merges the
partial tables with min/max folds.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import IO, Iterable

from .tree import (
    FreeTree,
    TreeError,
    TreeSignature,
    bfs_distances,
    canonical_form,
    degree_spectrum,
    degree_stats,
    diameter,
    isomorphism,
    prufer_decode,
    signature,
)

DEFAULT_N_CAP = 11
THREADS_ENV = "LINARR_THREADS"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class TreeStats:
    k1: int
    n1: int
    diameter: int
    mean_path_length: Fraction


@dataclass(frozen=True)
class CatalogEntry:
    representative: FreeTree
    signature: TreeSignature
    K2: int
    degree_spectrum: tuple[tuple[int, int], ...]   # sorted (degree, count) pairs
    labelled_multiplicity: int
    stats: TreeStats

    @property
    def n(self) -> int:
        return self.representative.n

    @property
    def spectrum(self) -> dict[int, int]:
        return dict(self.degree_spectrum)


@dataclass(frozen=True)
class SweepClass:
    """A catalog entry plus the extrema the sweep found for it.

    Witnesses are Prüfer-code indices (base-n numbering of the code with
    0-based symbols); the smallest index wins ties.
    """

    entry: CatalogEntry
    dmin: int
    dmax: int
    witness_min_index: int
    witness_max_index: int


def tree_stats(t: FreeTree) -> TreeStats:
    ds = degree_stats(t)
    n = t.n
    if n < 2:
        return TreeStats(ds.k1, ds.n1, 0, Fraction(0))
    total = sum(sum(bfs_distances(t, v)[v + 1:]) for v in range(1, n + 1))
    return TreeStats(ds.k1, ds.n1, diameter(t), Fraction(total, n * (n - 1) // 2))


def code_from_index(index: int, n: int) -> list[int]:
    """1-based Prüfer code with the given sweep index."""
    digits = []
    for _ in range(n - 2):
        index, r = divmod(index, n)
        digits.append(r + 1)
    return digits[::-1]


def tree_from_index(index: int, n: int) -> FreeTree:
    return prufer_decode(code_from_index(index, n), n)


def _check_n(n: int, allow_large: bool) -> None:
    if n < 2:
        raise CatalogError("n must be at least 2")
    if n > DEFAULT_N_CAP and not allow_large:
        raise CatalogError(f"n={n} exceeds the default cap {DEFAULT_N_CAP}; pass allow_large=True")


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CatalogError(f"{THREADS_ENV}={env!r} is not an integer") from None
    return os.cpu_count() or 1


def _entry(rep_source: FreeTree, mult: int) -> CatalogEntry:
    rep = canonical_form(rep_source)
    spectrum = tuple(degree_spectrum(rep).items())
    return CatalogEntry(rep, signature(rep), sum(k * k for k in rep.degrees),
                        spectrum, mult, tree_stats(rep))


def _sort_key(c: SweepClass):
    e = c.entry
    return (e.K2, e.degree_spectrum, e.signature.key)


# --- python reference sweep --------------------------------------------------

def _sweep_python(n: int, reverse: bool) -> list[SweepClass]:
    """Literal two-level table: K2 -> degree spectrum -> [(signature, record)]."""
    total = n ** (n - 2)
    table: dict[int, dict[tuple, list[list]]] = {}
    indices = range(total - 1, -1, -1) if reverse else range(total)
    for idx in indices:
        t = tree_from_index(idx, n)
        D = sum(v - u for u, v in t.edges)
        K2 = sum(k * k for k in t.degrees)
        spec = tuple(degree_spectrum(t).items())
        bucket = table.setdefault(K2, {}).setdefault(spec, [])
        sig = signature(t)
        for rec in bucket:
            if rec[0] == sig:
                rec[1] += 1
                if (D, idx) < (rec[2], rec[4]):
                    rec[2], rec[4] = D, idx
                if D > rec[3] or (D == rec[3] and idx < rec[5]):
                    rec[3], rec[5] = D, idx
                break
        else:
            bucket.append([sig, 1, D, D, idx, idx])
    out = []
    for by_spec in table.values():
        for bucket in by_spec.values():
            for sig, mult, dmin, dmax, wmin, wmax in bucket:
                # representative from the min witness so it does not depend on sweep order
                out.append(SweepClass(_entry(tree_from_index(wmin, n), mult),
                                      dmin, dmax, wmin, wmax))
    return sorted(out, key=_sort_key)


# --- compiled sweep ------------------------------------------------------------

def _fold(acc: dict, block) -> None:
    sig, _K2, _spec, mult, dmin, dmax, wmin, wmax = block
    for i in range(len(mult)):
        key = (int(sig[i, 0]), int(sig[i, 1]))
        rec = (int(mult[i]), int(dmin[i]), int(dmax[i]), int(wmin[i]), int(wmax[i]))
        old = acc.get(key)
        acc[key] = rec if old is None else _merge(old, rec)


def _merge(a: tuple, b: tuple) -> tuple:
    mult = a[0] + b[0]
    dmin, wmin = min((a[1], a[3]), (b[1], b[3]))
    # largest D, then smallest index
    dmax, neg = max((a[2], -a[4]), (b[2], -b[4]))
    return mult, dmin, dmax, wmin, -neg


def _sweep_numba(n: int, reverse: bool, threads: int) -> list[SweepClass]:
    from ._kernels import MAX_N, sweep_block

    if n > MAX_N:
        raise CatalogError(f"the compiled sweep supports n <= {MAX_N}")
    firsts = list(range(n))
    if reverse:
        firsts.reverse()
    acc: dict = {}
    if threads <= 1:
        for f in firsts:
            _fold(acc, sweep_block(n, f, reverse))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for block in pool.map(lambda f: sweep_block(n, f, reverse), firsts):
                _fold(acc, block)
    out = [SweepClass(_entry(tree_from_index(wmin, n), mult), dmin, dmax, wmin, wmax)
           for mult, dmin, dmax, wmin, wmax in acc.values()]
    return sorted(out, key=_sort_key)


@lru_cache(maxsize=None)
def _sweep_cached(n: int, backend: str, reverse: bool, threads: int) -> tuple[SweepClass, ...]:
    if n == 2:
        t = prufer_decode([], 2)
        return (SweepClass(_entry(t, 1), 1, 1, 0, 0),)
    if backend == "python":
        return tuple(_sweep_python(n, reverse))
    return tuple(_sweep_numba(n, reverse, threads))


def sweep(n: int, *, allow_large: bool = False, reverse: bool = False,
          backend: str = "auto", threads: int | None = None) -> tuple[SweepClass, ...]:
    """All classes of n-vertex trees with their exact D extrema (cached per n)."""
    _check_n(n, allow_large)
    if backend not in ("auto", "python", "numba"):
        raise CatalogError(f"unknown backend {backend!r}")
    if backend == "auto":
        backend = "numba"
    if threads is None:
        threads = default_threads()
    # thread count does not change the result, only how it is computed
    return _sweep_cached(n, backend, reverse, 1 if backend == "python" else max(1, threads))


def enumerate_unlabelled(n: int, *, allow_large: bool = False, reverse: bool = False,
                         backend: str = "auto", threads: int | None = None) -> list[CatalogEntry]:
    return [c.entry for c in sweep(n, allow_large=allow_large, reverse=reverse,
                                   backend=backend, threads=threads)]


def witness_arrangement(entry: CatalogEntry, index: int):
    """Arrangement of ``entry.representative`` equivalent to the labelled tree at ``index``."""
    from .arrangement import LinearArrangement

    n = entry.n
    labelled = tree_from_index(index, n) if n > 2 else prufer_decode([], 2)
    phi = isomorphism(entry.representative, labelled)
    return LinearArrangement.from_positions([phi[v] for v in range(1, n + 1)])


# --- dump -----------------------------------------------------------------------

def entry_record(entry: CatalogEntry) -> dict:
    s = entry.stats
    return {
        "n": entry.n,
        "K2": entry.K2,
        "degree_spectrum": {str(k): c for k, c in entry.degree_spectrum},
        "signature": entry.signature.digest,
        "multiplicity": entry.labelled_multiplicity,
        "edges": [list(e) for e in entry.representative.edges],
        "stats": {
            "k1": s.k1,
            "n1": s.n1,
            "diameter": s.diameter,
            "mean_path_length": str(s.mean_path_length),
        },
    }


def dump_catalog(entries: Iterable[CatalogEntry], fh: IO[str]) -> int:
    """Write one JSON record per class; returns the number written."""
    count = 0
    for e in entries:
        fh.write(json.dumps(entry_record(e), sort_keys=True) + "\n")
        count += 1
    return count


def load_catalog_records(fh: IO[str]) -> list[dict]:
    out = []
    for lineno, line in enumerate(fh, start=1):
        if not line.strip():
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise TreeError(f"line {lineno}: {exc.msg}") from None
    return out


__all__ = [
    "CatalogEntry",
    "CatalogError",
    "SweepClass",
    "TreeStats",
    "code_from_index",
    "default_threads",
    "dump_catalog",
    "entry_record",
    "enumerate_unlabelled",
    "load_catalog_records",
    "sweep",
    "tree_from_index",
    "tree_stats",
    "witness_arrangement",
]
