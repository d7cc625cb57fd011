"""Free trees, degree statistics, tree classes and canonical signatures.

Vertices are 1-based throughout.
"""
from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

LINEAR = "linear"
STAR = "star"
QUASISTAR = "quasistar"
BALANCED_BISTAR = "balanced_bistar"
BISTAR = "bistar"
CATERPILLAR = "caterpillar"
GENERAL = "general"

# most specific first
CLASS_ORDER = (LINEAR, STAR, QUASISTAR, BALANCED_BISTAR, BISTAR, CATERPILLAR, GENERAL)


class TreeError(ValueError):
    """Raised for malformed tree input."""


@dataclass(frozen=True)
class FreeTree:
    n: int
    edges: tuple[tuple[int, int], ...]
    degrees: tuple[int, ...] = field(repr=False)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples; index 0 is unused so ``adjacency[v]`` works."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return self.degrees[v - 1]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def relabel(self, mapping: dict[int, int] | Sequence[int]) -> "FreeTree":
        """Apply a vertex relabelling; a sequence is read as ``mapping[v - 1]``."""
        if not isinstance(mapping, dict):
            mapping = {v: mapping[v - 1] for v in range(1, self.n + 1)}
        return from_edge_list(self.n, [(mapping[u], mapping[v]) for u, v in self.edges])

    def __len__(self) -> int:
        return self.n


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> FreeTree:
    if n < 1:
        raise TreeError(f"a tree needs at least one vertex, got n={n}")
    seen: set[tuple[int, int]] = set()
    degrees = [0] * n
    for pair in pairs:
        if len(pair) != 2:
            raise TreeError(f"edge {tuple(pair)!r} is not a vertex pair")
        u, v = int(pair[0]), int(pair[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise TreeError(f"edge ({u}, {v}) has a vertex outside 1..{n}")
        if u == v:
            raise TreeError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise TreeError(f"duplicate edge {e}")
        seen.add(e)
        degrees[u - 1] += 1
        degrees[v - 1] += 1
    if len(seen) != n - 1:
        if len(seen) > n - 1:
            raise TreeError(f"cycle: {len(seen)} edges on {n} vertices")
        raise TreeError(f"expected {n - 1} edges, got {len(seen)}")

    # union-find detects both cycles and disconnection
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in seen:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise TreeError(f"cycle through edge ({u}, {v})")
        parent[ru] = rv
    return FreeTree(n, tuple(sorted(seen)), tuple(degrees))


def path_tree(n: int) -> FreeTree:
    return from_edge_list(n, [(i, i + 1) for i in range(1, n)])


def star_tree(n: int) -> FreeTree:
    return from_edge_list(n, [(1, i) for i in range(2, n + 1)])


def bistar_tree(n: int, k1: int) -> FreeTree:
    """Hubs 1 and 2 joined by an edge; hub 1 has degree ``k1``, hub 2 degree ``n - k1``."""
    if n < 2 or not (n - k1 <= k1 <= n - 1) or k1 < 1:
        raise TreeError(f"no bistar with n={n}, k1={k1}")
    edges = [(1, 2)]
    edges += [(1, v) for v in range(3, k1 + 2)]
    edges += [(2, v) for v in range(k1 + 2, n + 1)]
    return from_edge_list(n, edges)


def from_head_vector(heads: Sequence[int]) -> FreeTree:
    """Dependency-tree input: ``heads[i-1]`` is the head of word ``i``, 0 marks the root."""
    n = len(heads)
    roots = [i + 1 for i, h in enumerate(heads) if h == 0]
    if not roots:
        raise TreeError("head vector has no root (no entry equal to 0)")
    if len(roots) > 1:
        raise TreeError(f"multiple roots at positions {roots}")
    pairs = []
    for i, h in enumerate(heads, start=1):
        if h == 0:
            continue
        if not 1 <= h <= n:
            raise TreeError(f"head {h} of word {i} is outside 0..{n}")
        pairs.append((i, h))
    return from_edge_list(n, pairs)


# --- degree statistics ------------------------------------------------------

@dataclass(frozen=True)
class DegreeStats:
    n: int
    k1: int
    k2: int
    K2: int
    q: int
    qprime: int
    phi: int
    n1: int

    @property
    def mean_k2(self) -> Fraction:
        """Hubiness <k^2> as an exact rational."""
        return Fraction(self.K2, self.n)


def degree_stats(t: FreeTree) -> DegreeStats:
    n = t.n
    ordered = sorted(t.degrees, reverse=True)
    k1 = ordered[0]
    k2 = ordered[1] if n > 1 else 0
    return DegreeStats(
        n=n,
        k1=k1,
        k2=k2,
        K2=sum(k * k for k in t.degrees),
        q=sum(k % 2 for k in t.degrees),
        qprime=k1 % 2 + (n - k1) % 2,
        phi=(n + 2) ** 2 % 8,
        n1=sum(1 for k in t.degrees if k == 1),
    )


def degree_spectrum(t: FreeTree) -> dict[int, int]:
    return dict(sorted(Counter(t.degrees).items()))


# --- classes ----------------------------------------------------------------

@dataclass(frozen=True)
class TreeClass:
    tag: str
    flags: frozenset[str]
    k1: int

    def __contains__(self, flag: str) -> bool:
        return flag in self.flags


def is_caterpillar(t: FreeTree) -> bool:
    internal = [v for v in range(1, t.n + 1) if t.degree(v) > 1]
    if len(internal) <= 1:
        return True
    inner = set(internal)
    ends = 0
    for v in internal:
        d = sum(1 for w in t.neighbors(v) if w in inner)
        if d > 2:
            return False
        ends += d <= 1
    # a subtree of a tree is connected, so degree <= 2 makes it a path
    return ends == 2


def classify(t: FreeTree) -> TreeClass:
    n = t.n
    k1 = max(t.degrees) if n > 1 else 0
    internal = sum(1 for k in t.degrees if k > 1)
    flags = set()
    if k1 <= 2:
        flags.add(LINEAR)
    if internal <= 2 and n >= 2:
        flags.add(BISTAR)
        if k1 == n - 1:
            flags.add(STAR)
        if k1 == n - 2:
            flags.add(QUASISTAR)
        if k1 == (n + 1) // 2:
            flags.add(BALANCED_BISTAR)
    if n == 1:
        flags.update({LINEAR, STAR})
    if is_caterpillar(t):
        flags.add(CATERPILLAR)
    tag = next((c for c in CLASS_ORDER if c in flags), GENERAL)
    if not flags:
        flags.add(GENERAL)
    return TreeClass(tag, frozenset(flags), k1)


# --- distances, centers, signatures ------------------------------------------

def bfs_distances(t: FreeTree, source: int) -> list[int]:
    """Distances from ``source``; index 0 is unused and set to -1."""
    dist = [-1] * (t.n + 1)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in t.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def neighborhood_shells(t: FreeTree, v: int) -> list[frozenset[int]]:
    if not 1 <= v <= t.n:
        raise TreeError(f"vertex {v} is outside 1..{t.n}")
    dist = bfs_distances(t, v)
    shells: list[set[int]] = [set() for _ in range(max(dist) + 1)]
    for w in range(1, t.n + 1):
        shells[dist[w]].add(w)
    return [frozenset(s) for s in shells]


def jordan_centers(t: FreeTree) -> frozenset[int]:
    if t.n <= 2:
        return frozenset(range(1, t.n + 1))
    deg = list(t.degrees)
    layer = [v for v in range(1, t.n + 1) if deg[v - 1] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for u in layer:
            for w in t.neighbors(u):
                deg[w - 1] -= 1
                if deg[w - 1] == 1:
                    nxt.append(w)
        layer = nxt
    return frozenset(layer)


def _rooted_names(t: FreeTree, root: int) -> tuple[dict[int, str], dict[int, list[int]]]:
    """AHU names of every subtree when ``t`` is rooted at ``root``, plus sorted children."""
    parent = {root: 0}
    order = [root]
    for u in order:
        for w in t.neighbors(u):
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    names: dict[int, str] = {}
    children: dict[int, list[int]] = {}
    for u in reversed(order):
        kids = [w for w in t.neighbors(u) if w != parent[u]]
        kids.sort(key=names.__getitem__)
        children[u] = kids
        names[u] = "(" + "".join(names[w] for w in kids) + ")"
    return names, children


def rooted_canonical_name(t: FreeTree, root: int) -> str:
    return _rooted_names(t, root)[0][root]


@dataclass(frozen=True)
class TreeSignature:
    key: tuple[str, ...]

    @property
    def digest(self) -> str:
        return hashlib.sha1("|".join(self.key).encode()).hexdigest()[:16]


def signature(t: FreeTree) -> TreeSignature:
    names = sorted(rooted_canonical_name(t, c) for c in jordan_centers(t))
    return TreeSignature(tuple(names))


def canonical_order(t: FreeTree) -> list[int]:
    """Vertices in a canonical preorder.

    Two isomorphic trees produce orders that correspond vertex by vertex, so
    zipping them yields an isomorphism.
    """
    best = None
    for c in sorted(jordan_centers(t)):
        names, children = _rooted_names(t, c)
        if best is None or names[c] < best[0]:
            best = (names[c], c, children)
    _, root, children = best
    order, stack = [], [root]
    while stack:
        u = stack.pop()
        order.append(u)
        stack.extend(reversed(children[u]))
    return order


def canonical_form(t: FreeTree) -> FreeTree:
    """Relabel ``t`` so that the i-th vertex of its canonical order becomes ``i``."""
    order = canonical_order(t)
    return t.relabel({v: i for i, v in enumerate(order, start=1)})


def isomorphism(t1: FreeTree, t2: FreeTree) -> dict[int, int]:
    """A vertex map ``t1 -> t2`` preserving adjacency; raises if none exists."""
    if t1.n != t2.n or signature(t1) != signature(t2):
        raise TreeError("trees are not isomorphic")
    return dict(zip(canonical_order(t1), canonical_order(t2)))


def diameter(t: FreeTree) -> int:
    d0 = bfs_distances(t, 1)
    far = max(range(1, t.n + 1), key=d0.__getitem__)
    return max(bfs_distances(t, far)[1:])


# --- Prüfer codes -------------------------------------------------------------

def prufer_decode(seq: Sequence[int], n: int | None = None) -> FreeTree:
    if n is None:
        n = len(seq) + 2
    if len(seq) != n - 2:
        raise TreeError(f"a Prüfer code for n={n} has length {n - 2}, got {len(seq)}")
    for s in seq:
        if not 1 <= s <= n:
            raise TreeError(f"Prüfer entry {s} is outside 1..{n}")
    if n == 1:
        return from_edge_list(1, [])
    degree = [1] * (n + 1)
    for s in seq:
        degree[s] += 1
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    edges = []
    for s in seq:
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1 and s < ptr:
            leaf = s
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n))
    return from_edge_list(n, edges)


def prufer_encode(t: FreeTree) -> tuple[int, ...]:
    n = t.n
    if n <= 2:
        return ()
    degree = [0] + list(t.degrees)
    adj = t.adjacency
    removed = [False] * (n + 1)
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    code = []
    for _ in range(n - 2):
        nxt = next(w for w in adj[leaf] if not removed[w])
        code.append(nxt)
        removed[leaf] = True
        degree[nxt] -= 1
        if degree[nxt] == 1 and nxt < ptr:
            leaf = nxt
        else:
            ptr += 1
            while degree[ptr] != 1 or removed[ptr]:
                ptr += 1
            leaf = ptr
    return tuple(code)


# --- text formats -------------------------------------------------------------

def _int_tokens(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise TreeError(f"line {lineno}: expected integers, got {line.strip()!r}") from exc


def parse_edge_list(text: str) -> FreeTree:
    """First non-blank line ``n``, then ``n - 1`` lines ``u v``."""
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise TreeError("line 1: empty input")
    lineno, first = lines[0]
    head = _int_tokens(first, lineno)
    if len(head) != 1:
        raise TreeError(f"line {lineno}: expected the vertex count n alone")
    n = head[0]
    pairs = []
    for lineno, ln in lines[1:]:
        toks = _int_tokens(ln, lineno)
        if len(toks) != 2:
            raise TreeError(f"line {lineno}: expected 'u v', got {ln.strip()!r}")
        if not all(1 <= x <= n for x in toks):
            raise TreeError(f"line {lineno}: vertex outside 1..{n}")
        pairs.append(toks)
    if len(pairs) != n - 1:
        raise TreeError(f"line {lines[-1][0]}: expected {n - 1} edges, got {len(pairs)}")
    return from_edge_list(n, pairs)


def parse_head_vector(text: str) -> FreeTree:
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(lines) != 1:
        raise TreeError(f"line {lines[1][0] if lines else 1}: expected exactly one line of heads")
    lineno, ln = lines[0]
    heads = _int_tokens(ln, lineno)
    try:
        return from_head_vector(heads)
    except TreeError as exc:
        raise TreeError(f"line {lineno}: {exc}") from None


def format_edge_list(t: FreeTree) -> str:
    return "\n".join([str(t.n)] + [f"{u} {v}" for u, v in t.edges]) + "\n"
