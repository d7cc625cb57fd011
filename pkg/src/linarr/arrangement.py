"""Linear arrangements: edge-length sums, crossings and uniform sampling."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .tree import FreeTree, TreeError


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class LinearArrangement:
    """``positions[v - 1]`` is the position (1..n) of vertex ``v``."""

    positions: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.positions) != list(range(1, len(self.positions) + 1)):
            raise ArrangementError(f"positions {self.positions} are not a permutation of 1..n")

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> "LinearArrangement":
        return cls(tuple(int(p) for p in positions))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "LinearArrangement":
        """Build from the vertex sequence read left to right."""
        pos = [0] * len(order)
        for i, v in enumerate(order, start=1):
            if not 1 <= v <= len(order):
                raise ArrangementError(f"vertex {v} is outside 1..{len(order)}")
            pos[v - 1] = i
        return cls.from_positions(pos)

    @classmethod
    def identity(cls, n: int) -> "LinearArrangement":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.positions)

    def position(self, v: int) -> int:
        return self.positions[v - 1]

    @property
    def order(self) -> tuple[int, ...]:
        seq = [0] * self.n
        for v, p in enumerate(self.positions, start=1):
            seq[p - 1] = v
        return tuple(seq)

    def reversed(self) -> "LinearArrangement":
        return LinearArrangement(tuple(self.n + 1 - p for p in self.positions))


def _check(t: FreeTree, a: LinearArrangement) -> None:
    if a.n != t.n:
        raise ArrangementError(f"arrangement covers {a.n} vertices, tree has {t.n}")


def edge_lengths(t: FreeTree, a: LinearArrangement) -> list[int]:
    _check(t, a)
    pos = a.positions
    return [abs(pos[u - 1] - pos[v - 1]) for u, v in t.edges]


def sum_edge_lengths(t: FreeTree, a: LinearArrangement) -> int:
    return sum(edge_lengths(t, a))


def edge_crossings(t: FreeTree, a: LinearArrangement) -> int:
    _check(t, a)
    pos = a.positions
    spans = sorted(tuple(sorted((pos[u - 1], pos[v - 1]))) for u, v in t.edges)
    count = 0
    for i, (a1, b1) in enumerate(spans):
        for a2, b2 in spans[i + 1:]:
            if a2 >= b1:
                break
            if a1 < a2 < b1 < b2:
                count += 1
    return count


def is_planar(t: FreeTree, a: LinearArrangement) -> bool:
    return edge_crossings(t, a) == 0


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_arrangement(n: int, seed=None) -> LinearArrangement:
    """Uniformly random arrangement; ``seed`` is an int or a numpy Generator."""
    if n < 1:
        raise ArrangementError("n must be at least 1")
    return LinearArrangement.from_positions(_rng(seed).permutation(n) + 1)


def sample_sum_edge_lengths(t: FreeTree, samples: int, seed=None) -> np.ndarray:
    """D over ``samples`` independent uniform arrangements (one shuffle per row)."""
    rng = _rng(seed)
    base = np.tile(np.arange(1, t.n + 1, dtype=np.int64), (samples, 1))
    pos = rng.permuted(base, axis=1)
    total = np.zeros(samples, dtype=np.int64)
    for u, v in t.edges:
        total += np.abs(pos[:, u - 1] - pos[:, v - 1])
    return total


def parse_arrangement(text: str, n: int | None = None) -> LinearArrangement:
    """One line of n integers; entry i is the position of vertex i."""
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(lines) != 1:
        raise TreeError(f"line {lines[1][0] if lines else 1}: expected one line of positions")
    lineno, ln = lines[0]
    try:
        pos = [int(tok) for tok in ln.split()]
    except ValueError:
        raise TreeError(f"line {lineno}: expected integers, got {ln.strip()!r}") from None
    if n is not None and len(pos) != n:
        raise TreeError(f"line {lineno}: expected {n} positions, got {len(pos)}")
    try:
        return LinearArrangement.from_positions(pos)
    except ArrangementError as exc:
        raise TreeError(f"line {lineno}: {exc}") from None


def format_arrangement(a: LinearArrangement) -> str:
    return " ".join(map(str, a.positions)) + "\n"
