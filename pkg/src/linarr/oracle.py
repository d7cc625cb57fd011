"""Ground truth for D_min and D_max.

Three independent routes:

* ``sweep_extrema``: the exhaustive labelled-tree sweep of ``catalog``.
* ``brute_force_extrema``: every arrangement of one tree, halved by reversal.
* ``branch_and_bound``: exact D_min for single trees too large to enumerate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import chain, permutations

import numpy as np

from .arrangement import LinearArrangement, sum_edge_lengths
from .catalog import CatalogEntry, sweep, witness_arrangement
from .formulas import horton_terms
from .tree import FreeTree

BRUTE_FORCE_MAX_N = 10
DEFAULT_BUDGET = 2_000_000


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class ExtremalRecord:
    entry: CatalogEntry
    dmin: int
    dmax: int
    witness_min: LinearArrangement
    witness_max: LinearArrangement

    @property
    def n(self) -> int:
        return self.entry.n

    @property
    def tree(self) -> FreeTree:
        return self.entry.representative


def sweep_extrema(n: int, *, allow_large: bool = False, threads: int | None = None,
                  backend: str = "auto") -> list[ExtremalRecord]:
    out = []
    for c in sweep(n, allow_large=allow_large, threads=threads, backend=backend):
        out.append(ExtremalRecord(c.entry, c.dmin, c.dmax,
                                  witness_arrangement(c.entry, c.witness_min_index),
                                  witness_arrangement(c.entry, c.witness_max_index)))
    return out


# --- brute force ------------------------------------------------------------------

@lru_cache(maxsize=2)
def _half_positions(n: int) -> np.ndarray:
    """All position vectors (0-based) with vertex 1 left of vertex 2.

    Reversal maps one half onto the other and preserves D.
    """
    count = math.factorial(n)
    flat = np.fromiter(chain.from_iterable(permutations(range(n))), dtype=np.int8,
                       count=count * n)
    perms = flat.reshape(count, n)
    if n < 2:
        return perms
    half = perms[perms[:, 0] < perms[:, 1]]
    half.setflags(write=False)
    return half


def _all_D(t: FreeTree) -> np.ndarray:
    if t.n > BRUTE_FORCE_MAX_N:
        raise OracleError(f"brute force is capped at n={BRUTE_FORCE_MAX_N}, got n={t.n}")
    P = _half_positions(t.n)
    total = np.zeros(P.shape[0], dtype=np.int32)
    for u, v in t.edges:
        total += np.abs(P[:, u - 1].astype(np.int32) - P[:, v - 1])
    return total


def brute_force_extrema(t: FreeTree) -> tuple[int, int]:
    if t.n == 1:
        return 0, 0
    D = _all_D(t)
    return int(D.min()), int(D.max())


def brute_force_witnesses(t: FreeTree) -> tuple[LinearArrangement, LinearArrangement]:
    """First arrangements (in enumeration order) attaining D_min and D_max."""
    D = _all_D(t)
    P = _half_positions(t.n)
    lo, hi = int(np.argmin(D)), int(np.argmax(D))
    return (LinearArrangement.from_positions(P[lo] + 1),
            LinearArrangement.from_positions(P[hi] + 1))


def exact_moments(t: FreeTree) -> tuple[Fraction, Fraction]:
    """Mean and variance of D over all n! arrangements, as exact rationals."""
    if t.n < 2:
        return Fraction(0), Fraction(0)
    D = _all_D(t).astype(np.int64)
    count = D.shape[0]
    s1 = int(D.sum())
    s2 = int((D * D).sum())
    mean = Fraction(s1, count)
    return mean, Fraction(s2, count) - mean * mean


# --- branch and bound --------------------------------------------------------------

@dataclass(frozen=True)
class BranchAndBoundResult:
    dmin: int
    proven: bool
    arrangement: LinearArrangement
    nodes: int


def _projective_order(t: FreeTree, root: int) -> list[int]:
    """Projective layout: child subtrees alternate sides, larger ones further out."""
    parent = {root: 0}
    order = [root]
    for u in order:
        for w in t.neighbors(u):
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    size = {}
    for u in reversed(order):
        size[u] = 1 + sum(size[w] for w in t.neighbors(u) if w != parent[u])

    def layout(u: int, parent_left: bool) -> list[int]:
        kids = sorted((w for w in t.neighbors(u) if w != parent[u]), key=lambda w: (-size[w], w))
        far, near = [], []      # far side is away from the parent
        for i, w in enumerate(kids):
            (far if i % 2 == 0 else near).append(w)
        # outermost first on the left, innermost first on the right
        if parent_left:
            left, right = near, far
        else:
            left, right = far, near
        seq = []
        for w in left:
            seq.extend(layout(w, False))
        seq.append(u)
        for w in reversed(right):
            seq.extend(layout(w, True))
        return seq

    return layout(root, True)


def _cost(t: FreeTree, pos: list[int]) -> int:
    return sum(abs(pos[u] - pos[v]) for u, v in t.edges)


def _local_search(t: FreeTree, pos: list[int]) -> tuple[int, list[int]]:
    n = t.n
    best = _cost(t, pos)
    improved = True
    while improved:
        improved = False
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                pos[a], pos[b] = pos[b], pos[a]
                c = _cost(t, pos)
                if c < best:
                    best = c
                    improved = True
                else:
                    pos[a], pos[b] = pos[b], pos[a]
    return best, pos


def heuristic_min_arrangement(t: FreeTree) -> tuple[int, LinearArrangement]:
    """Best projective layout over all roots, polished by pairwise swaps."""
    best = None
    for r in range(1, t.n + 1):
        seq = _projective_order(t, r)
        pos = [0] * (t.n + 1)
        for i, v in enumerate(seq, start=1):
            pos[v] = i
        c = _cost(t, pos)
        if best is None or c < best[0]:
            best = (c, pos)
    c, pos = _local_search(t, best[1])
    return c, LinearArrangement.from_positions(pos[1:])


def _forest_bound(t: FreeTree, placed: list[bool]) -> int:
    """Caterpillar bound summed over the components of the unplaced forest."""
    n = t.n
    seen = [False] * (n + 1)
    total = 0
    for s in range(1, n + 1):
        if placed[s] or seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in t.neighbors(u):
                if not placed[w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if len(comp) > 1:
            degs = [sum(1 for w in t.neighbors(u) if not placed[w]) for u in comp]
            total += len(comp) - 1 + sum(horton_terms(degs))
    return total


def branch_and_bound(t: FreeTree, budget: int = DEFAULT_BUDGET) -> BranchAndBoundResult:
    """Exact D_min by filling positions left to right.

    A partial arrangement is pruned when its committed length plus a lower
    bound on the rest reaches the incumbent.  The bound adds two disjoint
    parts: dangling edges (placed to unplaced endpoint) need their endpoints
    at distinct positions after the frontier, and each component of the
    unplaced forest needs at least its caterpillar bound.

    Symmetry breaking: leaves hanging from the same vertex are placed in id
    order, and the smallest-id vertex of maximum degree sits in the left half.
    ``budget`` caps the number of search nodes; if it runs out the incumbent
    is returned with ``proven=False``.
    """
    n = t.n
    if n == 1:
        return BranchAndBoundResult(0, True, LinearArrangement.identity(1), 0)
    inc_cost, inc_arr = heuristic_min_arrangement(t)
    best = [inc_cost, list(inc_arr.positions)]
    root_bound = n - 1 + sum(horton_terms(t.degrees))
    if inc_cost <= root_bound:
        return BranchAndBoundResult(inc_cost, True, inc_arr, 0)

    deg = t.degrees
    order_pref = sorted(range(1, n + 1), key=lambda v: (-deg[v - 1], v))
    anchor = order_pref[0]
    half = (n + 1) // 2
    # twin leaves: same neighbour, place in id order
    prev_twin = [0] * (n + 1)
    last_leaf: dict[int, int] = {}
    for v in range(1, n + 1):
        if deg[v - 1] == 1:
            hub = t.neighbors(v)[0]
            prev_twin[v] = last_leaf.get(hub, 0)
            last_leaf[hub] = v

    placed = [False] * (n + 1)
    pos = [0] * (n + 1)
    mult = [0] * (n + 1)        # dangling edges into each unplaced vertex
    nodes = 0
    exhausted = False

    def bound(p: int, committed: int) -> int:
        ms = sorted((mult[w] for w in range(1, n + 1) if not placed[w] and mult[w]), reverse=True)
        return committed + sum(m * (i + 1) for i, m in enumerate(ms)) + _forest_bound(t, placed)

    def search(p: int, committed: int, dangling: int) -> None:
        nonlocal nodes, exhausted
        if p == n:
            if committed < best[0]:
                best[0] = committed
                best[1] = pos[1:]
            return
        if not placed[anchor] and p >= half:
            return
        for v in order_pref:
            if placed[v]:
                continue
            if prev_twin[v] and not placed[prev_twin[v]]:
                continue
            if nodes >= budget:
                exhausted = True
                return
            nodes += 1
            new_committed = committed + dangling
            back = mult[v]
            fwd = deg[v - 1] - back
            placed[v] = True
            pos[v] = p + 1
            for w in t.neighbors(v):
                if not placed[w]:
                    mult[w] += 1
            new_dangling = dangling - back + fwd
            if bound(p + 1, new_committed) < best[0]:
                search(p + 1, new_committed, new_dangling)
            for w in t.neighbors(v):
                if not placed[w]:
                    mult[w] -= 1
            placed[v] = False
            if exhausted:
                return

    search(0, 0, 0)
    arr = LinearArrangement.from_positions(best[1])
    assert sum_edge_lengths(t, arr) == best[0]
    return BranchAndBoundResult(best[0], not exhausted, arr, nodes)


def branch_and_bound_dmin(t: FreeTree, budget: int = DEFAULT_BUDGET) -> tuple[int, bool]:
    r = branch_and_bound(t, budget)
    return r.dmin, r.proven
