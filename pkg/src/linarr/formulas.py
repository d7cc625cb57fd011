"""Closed forms for the extrema of D, their bounds, and the r.l.a. moments.

Everything that can be exact is exact: integers or ``Fraction``.  Only the
Iordanskii bounds involve logarithms and come back as floats.

Dispatching functions accept either a class tag string or a ``TreeClass``.
Where a formula has a floor-based and a modulo-based form, both are exposed
through ``form="floor" | "mod"`` so sweeps can check they agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .tree import (
    BALANCED_BISTAR,
    BISTAR,
    CATERPILLAR,
    LINEAR,
    QUASISTAR,
    STAR,
    TreeClass,
)


class FormulaError(ValueError):
    pass


def _tag(kind) -> str:
    return kind.tag if isinstance(kind, TreeClass) else str(kind)


def _exact(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return x.numerator


# --- moments ------------------------------------------------------------------

def expected_D_rla(n: int) -> Fraction:
    return Fraction(n * n - 1, 3)


def variance_D_rla(n: int, K2: int) -> Fraction:
    return Fraction((n + 1) * (4 * (n - 1) ** 2 + (n - 4) * K2), 180)


def variance_rla_closed_form(kind, n: int) -> Fraction:
    """Variance of D for the four named trees, written directly in n."""
    tag = _tag(kind)
    if tag == LINEAR:
        return Fraction((n - 2) * (n + 1) * (4 * n - 7), 90)
    if tag == STAR:
        return Fraction((n + 1) * (n - 1) * (n + 2) * (n - 2), 180)
    if tag == QUASISTAR:
        return Fraction((n + 1) * (n * ((n - 3) * n + 10) - 20), 180)
    if tag == BALANCED_BISTAR:
        h = -(-n // 2)
        # printed tables carry -n^2 here; expanding the K2 form gives +n^2
        return Fraction((n + 1) * (2 * (n - 4) * h * (h - n) + n * (n * n + n - 14) + 12), 180)
    raise FormulaError(f"no variance closed form for class {tag!r}")


def hubiness_closed_form(kind, n: int) -> Fraction:
    """<k^2> of the named trees."""
    tag = _tag(kind)
    if tag == LINEAR:
        return 4 - Fraction(6, n)
    if tag == QUASISTAR:
        # n - 3 + 6/n: the only sign consistent with the bistar moment at k1 = n - 2
        return n - 3 + Fraction(6, n)
    if tag == STAR:
        return Fraction(n - 1)
    if tag == BALANCED_BISTAR:
        h = -(-n // 2)
        return Fraction(2, n) * (h * (h - n) - 1) + n + 1
    raise FormulaError(f"no hubiness closed form for class {tag!r}")


def bistar_hubiness(n: int, k1: int) -> Fraction:
    return Fraction(2, n) * (k1 * (k1 - n) - 1) + n + 1


# --- D_min ---------------------------------------------------------------------

def horton_terms(degrees: Sequence[int]) -> list[int]:
    """Per-vertex excess floor((k - 1)^2 / 4) over a unit-length edge."""
    return [(k - 1) ** 2 // 4 for k in degrees]


def caterpillar_dmin(degrees: Sequence[int], form: str = "horton") -> int:
    """D_min of the caterpillar with this degree sequence.

    For any other tree with the same degrees the value is a lower bound on
    D_min, tight exactly when the tree is a caterpillar.
    """
    n = len(degrees)
    if form == "horton":
        return n - 1 + sum(horton_terms(degrees))
    if form == "shifted":
        return sum((k + 1) ** 2 // 4 for k in degrees) - (n - 1)
    if form == "moment":
        K2 = sum(k * k for k in degrees)
        q = sum(k % 2 for k in degrees)
        return _exact(Fraction(K2 + q, 4))
    if form == "product":
        return n - 1 + sum((k // 2) * -(-(k - 2) // 2) for k in degrees)
    raise FormulaError(f"unknown caterpillar form {form!r}")


def dmin_linear(n: int) -> int:
    return n - 1


def dmin_star(n: int, form: str = "floor") -> int:
    if form == "floor":
        return n * n // 4
    return _exact(Fraction(n * n - n % 2, 4))


def dmin_quasistar(n: int, form: str = "floor") -> int:
    if form == "floor":
        return (n - 1) ** 2 // 4 + 1
    return _exact(Fraction(n * (n - 2) + n % 2, 4)) + 1


def dmin_balanced_bistar(n: int, form: str = "floor") -> int:
    if form == "floor":
        return (n + 2) ** 2 // 8 - 1
    phi = (n + 2) ** 2 % 8
    return _exact(Fraction(n * n + 4 * n - 4 - phi, 8))


def dmin_bistar(n: int, k1: int, form: str = "floor") -> int:
    if form == "floor":
        return (k1 + 1) ** 2 // 4 + (n - k1 + 1) ** 2 // 4 - 1
    qprime = k1 % 2 + (n - k1) % 2
    return _exact(Fraction(k1 * (k1 - n), 2) + Fraction(n * (n + 2) + qprime, 4)) - 1


def dmin_closed_form(kind, n: int, k1: int | None = None,
                     degrees: Sequence[int] | None = None, form: str = "floor") -> int:
    tag = _tag(kind)
    if k1 is None and isinstance(kind, TreeClass):
        k1 = kind.k1
    if tag == LINEAR:
        return dmin_linear(n)
    if tag == STAR:
        return dmin_star(n, form)
    if tag == QUASISTAR:
        return dmin_quasistar(n, form)
    if tag == BALANCED_BISTAR:
        return dmin_balanced_bistar(n, form)
    if tag == BISTAR:
        if k1 is None:
            raise FormulaError("bistar D_min needs k1")
        return dmin_bistar(n, k1, form)
    if tag == CATERPILLAR:
        if degrees is None:
            raise FormulaError("caterpillar D_min needs the degree sequence")
        return caterpillar_dmin(degrees, "horton" if form == "floor" else "moment")
    raise FormulaError(f"no closed form of D_min for class {tag!r}")


# --- D_max ---------------------------------------------------------------------

def dmax_linear(n: int, form: str = "floor") -> int:
    if form == "floor":
        return n * n // 2 - 1
    return _exact(Fraction(n * n - n % 2, 2)) - 1


def dmax_bistar(n: int, k1: int) -> int:
    return k1 * (n - k1) + n * (n - 3) // 2 + 1


def dmax_balanced_bistar(n: int) -> int:
    return _exact(Fraction(3 * (n - 1) ** 2 + 1 - n % 2, 4))


def dmax_quasistar(n: int) -> int:
    return (n + 3) * (n - 2) // 2


def dmax_star(n: int) -> int:
    return n * (n - 1) // 2


def dmax_closed_form(kind, n: int, k1: int | None = None) -> int:
    tag = _tag(kind)
    if k1 is None and isinstance(kind, TreeClass):
        k1 = kind.k1
    if tag == LINEAR:
        return dmax_linear(n)
    if tag == STAR:
        return dmax_star(n)
    if tag == QUASISTAR:
        return dmax_quasistar(n)
    if tag == BALANCED_BISTAR:
        return dmax_balanced_bistar(n)
    if tag == BISTAR:
        if k1 is None:
            raise FormulaError("bistar D_max needs k1")
        return dmax_bistar(n, k1)
    raise FormulaError(f"no closed form of D_max for class {tag!r}")


# --- bounds --------------------------------------------------------------------

def degree_method_lower_bound(n: int, K2: int, q: int) -> Fraction:
    return Fraction(1, 4) * (Fraction(K2, 2) + 2 * (n - 1) + Fraction(q, 2))


def bcr_from_dmin(degrees: Sequence[int], dmin: int) -> int:
    """Bipartite crossing number of a tree from its exact D_min."""
    bcr = dmin - len(degrees) + 1 - sum(horton_terms(degrees))
    if bcr < 0:
        raise FormulaError(f"D_min={dmin} is below the caterpillar bound for these degrees")
    return bcr


def naive_upper_bound(n: int, m: int) -> int:
    return m * (n - 1)


def edge_method_upper_bound(n: int, m: int) -> int:
    """Upper bound on D_max of any graph with n vertices and m edges.

    Takes the m longest available lengths, given that at most n - d edges
    can have length d.
    """
    if not 0 < m <= n * (n - 1) // 2:
        raise FormulaError(f"m={m} is not in 1..n(n-1)/2 for n={n}")
    # ceil(n + 1/2 - sqrt(8m + 1)/2) == (2n + 2 - isqrt(8m + 1)) // 2, exactly
    d = (2 * n + 2 - math.isqrt(8 * m + 1)) // 2
    F = (n - d) * (n - d + 1) // 2
    tail = Fraction((n - d) * (n * n + (n + 3) * d - 2 * d * d - 1), 6)
    return _exact((m - F) * (d - 1) + tail)


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float


def iordanskii_dmin_bounds(n: int, k1: int) -> BoundPair:
    """Bounds on the largest D_min among trees of n vertices and maximum degree k1."""
    if k1 < 3:
        raise FormulaError("Iordanskii's bounds need k1 >= 3")
    if n < 4:
        raise FormulaError("Iordanskii's bounds need n >= 4")
    log_n = math.log2(n)
    lower = (k1 - 7 / 3) / (12 * math.log2(k1)) * n * log_n * (1 - math.log2(1.5) / log_n)
    upper = (k1 + 4) / (4 * math.log2(k1 - 1)) * n * log_n
    return BoundPair(lower, upper)


def iordanskii_constants(k1: int) -> tuple[float, float]:
    """Leading factors of both bounds relative to k1 n log2(n) / log2(k1)."""
    lk = math.log2(k1)
    return (k1 - 7 / 3) / (12 * k1), (k1 + 4) * lk / (4 * k1 * math.log2(k1 - 1))
