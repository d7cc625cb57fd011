"""Explicit arrangements attaining (or bounding) D_max."""
from __future__ import annotations

from dataclasses import dataclass

from .arrangement import LinearArrangement, sum_edge_lengths
from .tree import FreeTree, TreeError, bistar_tree, from_edge_list, neighborhood_shells, path_tree

LINEAR_MAX = "linear_max"
BISTAR_EXTREME = "bistar_extreme"
SHELL_TEMPLATE = "shell_template"
PRIM_MAX = "prim_max"


@dataclass(frozen=True)
class ConstructedExtremum:
    tree: FreeTree
    arrangement: LinearArrangement
    claimed_D: int
    kind: str
    trace: tuple = ()

    def __post_init__(self):
        actual = sum_edge_lengths(self.tree, self.arrangement)
        if actual != self.claimed_D:
            raise AssertionError(f"{self.kind}: claimed D={self.claimed_D}, actual {actual}")


def _chao_liang_even(n: int, beta_args: list[int] | None = None) -> list[int]:
    """Maximum arrangement of the path 1-2-...-n for even n, as ``alpha[v - 1]``.

    The left half of the arrangement receives even labels, the right half odd
    ones; each step hands the next label of one half to the nearest free slot
    of the other.
    """
    c = n // 2

    def beta(x: int) -> int:
        if beta_args is not None:
            beta_args.append(x)
        if x < c:
            return 1
        if x > c:
            return -1
        raise AssertionError(f"beta evaluated at the midpoint {c}")

    alpha = [0] * (n + 1)
    alpha[n], alpha[1] = c, c + 1
    left_free = iter(range(c - 1, 0, -1))      # nearest to the centre first
    right_free = iter(range(c + 2, n + 1))
    x, y = n, 1                                # current vertex of the left / right part
    placed = 2
    while placed < n:
        nx = x + beta(x)
        alpha[nx] = next(right_free)
        ny = y + beta(y)
        alpha[ny] = next(left_free)
        x, y = ny, nx
        placed += 2
    return alpha[1:]


def max_arrangement_linear(n: int) -> ConstructedExtremum:
    if n < 2:
        raise TreeError("need n >= 2")
    if n % 2 == 0:
        alpha = _chao_liang_even(n)
        claimed = (n * n - 2) // 2
    else:
        c = (n - 1) // 2
        base = _chao_liang_even(n - 1)
        # new vertex 1 takes the centre; the even build shifts to vertices 2..n
        alpha = [c + 1] + [p + 1 if p > c else p for p in base]
        claimed = (n * n - 3) // 2
    return ConstructedExtremum(path_tree(n), LinearArrangement.from_positions(alpha),
                               claimed, LINEAR_MAX)


def extreme_arrangement_bistar(n: int, k1: int) -> ConstructedExtremum:
    """Hub 1 at the left end, hub 2 at the right end, each hub's leaves next to the other hub."""
    if not (n >= 2 and -(-n // 2) <= k1 <= n - 1):
        raise TreeError(f"k1={k1} outside ceil(n/2)..n-1 for n={n}")
    t = bistar_tree(n, k1)
    leaves1 = [w for w in t.neighbors(1) if w != 2]
    leaves2 = [w for w in t.neighbors(2) if w != 1]
    order = [1] + leaves2 + leaves1 + [2]
    claimed = k1 * (n - k1) + n * (n - 3) // 2 + 1
    return ConstructedExtremum(t, LinearArrangement.from_order(order), claimed, BISTAR_EXTREME)


def shell_template_order(t: FreeTree, v: int) -> list[int]:
    shells = neighborhood_shells(t, v)
    even = [sorted(s) for s in shells[0::2]]
    odd = [sorted(s) for s in shells[1::2]]
    return [w for s in even for w in s] + [w for s in reversed(odd) for w in s]


def shell_template_arrangement(t: FreeTree, v: int) -> ConstructedExtremum:
    """Even distance shells from the left, odd shells mirrored on the right.

    D is at least n(n-1)/2 for every tree and every start vertex.
    """
    a = LinearArrangement.from_order(shell_template_order(t, v))
    return ConstructedExtremum(t, a, sum_edge_lengths(t, a), SHELL_TEMPLATE)


def prim_max_arrangement(n: int) -> ConstructedExtremum:
    """Greedy maximum spanning tree of K_n under |i - j| weights, labels read as positions.

    Only ``{1, y}`` and ``{x, n}`` can be the longest edge out of the growing
    tree; ties go to ``{1, y}``.
    """
    if n < 2:
        raise TreeError("need n >= 2")
    x, y = 2, n
    edges, trace = [], []
    while x <= y:
        if y - 1 >= n - x:
            e = (1, y)
            y -= 1
        else:
            e = (x, n)
            x += 1
        edges.append(e)
        trace.append((e, e[1] - e[0]))
    t = from_edge_list(n, edges)
    claimed = sum(length for _, length in trace)
    return ConstructedExtremum(t, LinearArrangement.identity(n), claimed, PRIM_MAX, tuple(trace))


def max_D_single_vertex(n: int, ki: int) -> int:
    """Largest total length of the ki edges at one vertex: vertex at an end, neighbours at the other."""
    if not 1 <= ki <= n - 1:
        raise TreeError(f"degree {ki} outside 1..{n - 1}")
    return ki * (2 * n - ki - 1) // 2
