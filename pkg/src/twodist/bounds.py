"""Cardinality bounds for two-distance sets driven by the spectral
parameter gamma.

gamma is (1 + delta^2)/|1 - delta^2| for a euclidean set with squared
distance ratio delta^2, and (2 - a - b)/(b - a) for a spherical set with
inner products a < b.  All bound values are exact rationals; the integer
cardinality bound is their floor.  A bound whose denominator is
nonpositive is vacuous, which is a first-class result (tables render it as
a blank), not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Spectrum, as_fraction, format_rational

EUCLIDEAN = "euclidean"
SPHERICAL_POS = "spherical_pos"
SPHERICAL_NEG = "spherical_neg"
LS_MAX_EUCLIDEAN = "ls_max_euclidean"
LS_MAX_SPHERICAL = "ls_max_spherical"


@dataclass(frozen=True)
class GammaParam:
    """The spectral parameter gamma > 1 with a record of its source."""

    gamma: Fraction
    source: str
    params: tuple[Fraction, ...]

    def __post_init__(self):
        if self.gamma <= 1:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")

    def as_dict(self) -> dict:
        return {
            "gamma": format_rational(self.gamma),
            "source": self.source,
            "params": [format_rational(p) for p in self.params],
        }


def gamma_from_delta_sq(delta_sq: object) -> GammaParam:
    """gamma = (1 + delta^2)/|1 - delta^2|; invariant under delta^2 -> 1/delta^2."""
    d2 = as_fraction(delta_sq)
    if d2 <= 0:
        raise ValueError("delta_sq must be positive")
    if d2 == 1:
        raise ValueError("delta_sq = 1 is a one-distance set")
    return GammaParam((1 + d2) / abs(1 - d2), "euclidean", (d2,))


def gamma_from_inner_products(a: object, b: object) -> GammaParam:
    """gamma = (2 - a - b)/(b - a) for inner products -1 <= a < b < 1."""
    af, bf = as_fraction(a), as_fraction(b)
    if bf >= 1:
        raise ValueError("b must be below 1")
    if not -1 <= af < bf:
        raise ValueError(f"need -1 <= a < b, got a={af}, b={bf}")
    return GammaParam((2 - af - bf) / (bf - af), "spherical", (af, bf))


def _gamma_value(gamma: object) -> Fraction:
    if isinstance(gamma, GammaParam):
        return gamma.gamma
    g = as_fraction(gamma)
    if g <= 0:
        raise ValueError("gamma must be positive")
    return g


@dataclass(frozen=True)
class BoundResult:
    """One evaluated cardinality bound.

    ``exact_value`` is the exact rational right-hand side and
    ``cardinality_bound`` its floor; both are None when the bound is
    vacuous (``valid`` False).
    """

    kind: str
    d: int
    gamma: Fraction | None
    exact_value: Fraction | None
    cardinality_bound: int | None
    valid: bool
    note: str = ""
    m: int | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "gamma": None if self.gamma is None else format_rational(self.gamma),
            "m": self.m,
            "exact_value": None
            if self.exact_value is None
            else format_rational(self.exact_value),
            "cardinality_bound": self.cardinality_bound,
            "valid": self.valid,
            "note": self.note,
        }


def _vacuous(kind: str, d: int, g: Fraction, threshold: str) -> BoundResult:
    return BoundResult(
        kind=kind, d=d, gamma=g, exact_value=None, cardinality_bound=None,
        valid=False, note=f"bound vacuous: gamma^2 <= {threshold}",
    )


def bound_euclidean(d: int, gamma: object) -> BoundResult:
    """n <= (d+1)(gamma^2 - 1)/(gamma^2 - (d+1)) + 1, valid for gamma^2 > d + 1."""
    if d < 1:
        raise ValueError("d must be >= 1")
    g = _gamma_value(gamma)
    denom = g * g - (d + 1)
    if denom <= 0:
        return _vacuous(EUCLIDEAN, d, g, "d + 1")
    exact = Fraction(d + 1) * (g * g - 1) / denom + 1
    return BoundResult(EUCLIDEAN, d, g, exact, math.floor(exact), True)


def bound_spherical_pos(d: int, gamma: object) -> BoundResult:
    """n <= d(gamma^2 - 1)/(gamma^2 - d), valid for gamma^2 > d (a + b >= 0)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    g = _gamma_value(gamma)
    denom = g * g - d
    if denom <= 0:
        return _vacuous(SPHERICAL_POS, d, g, "d")
    exact = Fraction(d) * (g * g - 1) / denom
    return BoundResult(SPHERICAL_POS, d, g, exact, math.floor(exact), True)


def bound_spherical_neg(d: int, gamma: object) -> BoundResult:
    """n <= (d+1)(gamma^2 - 1)/(gamma^2 - (d+1)), valid for gamma^2 > d + 1
    (a + b < 0; the relative bound for equiangular lines one dimension up)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    g = _gamma_value(gamma)
    denom = g * g - (d + 1)
    if denom <= 0:
        return _vacuous(SPHERICAL_NEG, d, g, "d + 1")
    exact = Fraction(d + 1) * (g * g - 1) / denom
    return BoundResult(SPHERICAL_NEG, d, g, exact, math.floor(exact), True)


@dataclass(frozen=True)
class LrsCheck:
    """Odd-integrality verdict for gamma, with the constant k when odd.

    ``applies`` records whether the set is large enough (n > 2d + 4
    euclidean, n > 2d + 2 spherical) for the integrality theorem to bind;
    gamma = 2k - 1 corresponds to squared distance ratio (k-1)/k.
    """

    applies: bool
    odd_ok: bool
    k: int | None

    def as_dict(self) -> dict:
        return {"applies": self.applies, "odd_ok": self.odd_ok, "k": self.k}


def lrs_check(gamma: object, n: int, d: int, kind: str) -> LrsCheck:
    g = _gamma_value(gamma)
    if kind == EUCLIDEAN:
        threshold = 2 * d + 4
    elif kind in (SPHERICAL_POS, "spherical"):
        threshold = 2 * d + 2
    else:
        raise ValueError(f"unknown kind {kind!r}")
    odd = g.denominator == 1 and g.numerator % 2 == 1
    return LrsCheck(
        applies=n > threshold,
        odd_ok=odd,
        k=(g.numerator + 1) // 2 if odd else None,
    )


def ls_max_bound(d: int, m: int, kind: str) -> BoundResult:
    """Bound over all gamma > 2m + 1, requiring (2m + 1)^2 > d > 3.

    euclidean: (d+1) 4m(m+1)/((2m+1)^2 - (d+1)) + 1;
    spherical: 4dm(m+1)/((2m+1)^2 - d).
    Each equals the pointwise bound at gamma = 2m + 1 exactly.
    """
    if m < 1 or d <= 3 or (2 * m + 1) ** 2 <= d:
        raise ValueError("requires (2m+1)^2 > d > 3 with m >= 1")
    if kind == EUCLIDEAN:
        denom = (2 * m + 1) ** 2 - (d + 1)
        if denom <= 0:
            raise ValueError("euclidean form requires (2m+1)^2 > d + 1")
        exact = Fraction((d + 1) * 4 * m * (m + 1), denom) + 1
        return BoundResult(
            LS_MAX_EUCLIDEAN, d, None, exact, math.floor(exact), True, m=m
        )
    if kind in (SPHERICAL_POS, "spherical"):
        denom = (2 * m + 1) ** 2 - d
        exact = Fraction(4 * d * m * (m + 1), denom)
        return BoundResult(
            LS_MAX_SPHERICAL, d, None, exact, math.floor(exact), True, m=m
        )
    raise ValueError(f"unknown kind {kind!r}")


def equality_spectrum(n: int, d: int, kind: str) -> Spectrum:
    """The forced two-value Seidel spectrum when the bound is met with equality.

    euclidean (matrix order n - 1):
      {(-sqrt((n-2)(d+1)/(n-d-2)))^(n-d-2), (sqrt((n-2)(n-d-2)/(d+1)))^(d+1)};
    spherical (matrix order n):
      {(-sqrt(d(n-1)/(n-d)))^(n-d), (sqrt((n-1)(n-d)/d))^d}.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if kind == EUCLIDEAN:
        mult_neg, mult_pos = n - d - 2, d + 1
        if mult_neg < 1:
            raise ValueError("multiplicity <= 0: need n > d + 2")
        neg_sq = Fraction((n - 2) * (d + 1), mult_neg)
        pos_sq = Fraction((n - 2) * mult_neg, d + 1)
    elif kind in (SPHERICAL_POS, "spherical"):
        mult_neg, mult_pos = n - d, d
        if mult_neg < 1:
            raise ValueError("multiplicity <= 0: need n > d")
        neg_sq = Fraction(d * (n - 1), mult_neg)
        pos_sq = Fraction((n - 1) * mult_neg, d)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    clusters = (
        (-math.sqrt(neg_sq), mult_neg),
        (math.sqrt(pos_sq), mult_pos),
    )
    return Spectrum(clusters, tol=0.0)


TABLE2 = "table2"
TABLE3 = "table3"
TABLE4 = "table4"

TABLE4_COLUMNS = ("g5", "m5_plus", "m5_minus")


@dataclass(frozen=True)
class TableSpec:
    kind: str
    d_range: tuple[int, int]
    k_range: tuple[int, int] = (2, 5)

    def __post_init__(self):
        if self.kind not in (TABLE2, TABLE3, TABLE4):
            raise ValueError(f"unknown table kind {self.kind!r}")
        if self.d_range[0] < 2 or self.d_range[1] < self.d_range[0]:
            raise ValueError("d range must be nondecreasing with d >= 2")
        if self.k_range[0] < 2 or self.k_range[1] < self.k_range[0]:
            raise ValueError("k range must be nondecreasing with k >= 2")


def default_table_spec(kind: str) -> TableSpec:
    if kind in (TABLE2, TABLE3):
        return TableSpec(kind, (5, 33), (2, 5))
    if kind == TABLE4:
        return TableSpec(kind, (9, 23))
    raise ValueError(f"unknown table kind {kind!r}")


@dataclass(frozen=True)
class Table:
    kind: str
    columns: tuple[str, ...]
    d_values: tuple[int, ...]
    cells: dict

    def result(self, d: int, column: str) -> BoundResult | None:
        return self.cells[(d, column)]

    def value(self, d: int, column: str) -> int | None:
        res = self.cells[(d, column)]
        return None if res is None or not res.valid else res.cardinality_bound

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "columns": list(self.columns),
            "d_values": list(self.d_values),
            "cells": {
                f"{d},{col}": (None if res is None else res.as_dict())
                for (d, col), res in sorted(self.cells.items())
            },
        }


def make_table(spec: TableSpec, catalog=None) -> Table:
    """Evaluate a whole bound table.

    table2 and table3 put k = 2..5 (gamma = 2k - 1) across the columns;
    table4 evaluates the three gamma = 5 bounds side by side.  Vacuous
    bounds become blank cells.  When an ETF catalog is supplied, the
    refinement that lowers exactly-integer bounds is applied to every cell.
    """
    if catalog is not None:
        from .etf import refine_euclidean, refine_spherical
    d_values = tuple(range(spec.d_range[0], spec.d_range[1] + 1))
    cells = {}
    if spec.kind in (TABLE2, TABLE3):
        columns = tuple(f"k={k}" for k in range(spec.k_range[0], spec.k_range[1] + 1))
        for d in d_values:
            for k in range(spec.k_range[0], spec.k_range[1] + 1):
                gamma = Fraction(2 * k - 1)
                if spec.kind == TABLE2:
                    if catalog is None:
                        res = bound_euclidean(d, gamma)
                    else:
                        res = refine_euclidean(d, gamma, catalog)
                else:
                    if catalog is None:
                        res = bound_spherical_pos(d, gamma)
                    else:
                        res = refine_spherical(d, gamma, catalog, branch="pos")
                cells[(d, f"k={k}")] = res if res.valid else None
        return Table(spec.kind, columns, d_values, cells)
    gamma = Fraction(5)
    for d in d_values:
        if catalog is None:
            g5 = bound_euclidean(d, gamma)
            pos = bound_spherical_pos(d, gamma)
            neg = bound_spherical_neg(d, gamma)
        else:
            g5 = refine_euclidean(d, gamma, catalog)
            pos = refine_spherical(d, gamma, catalog, branch="pos")
            neg = refine_spherical(d, gamma, catalog, branch="neg")
        cells[(d, "g5")] = g5 if g5.valid else None
        cells[(d, "m5_plus")] = pos if pos.valid else None
        cells[(d, "m5_minus")] = neg if neg.valid else None
    return Table(TABLE4, TABLE4_COLUMNS, d_values, cells)


def table_to_csv(table: Table) -> str:
    """Wide CSV: one row per dimension, blank cells for vacuous bounds."""
    lines = ["d," + ",".join(table.columns)]
    for d in table.d_values:
        cells = []
        for col in table.columns:
            v = table.value(d, col)
            cells.append("" if v is None else str(v))
        lines.append(f"{d}," + ",".join(cells))
    return "\n".join(lines) + "\n"


def table_to_markdown(table: Table) -> str:
    header = ["d", *table.columns]
    rows = []
    for d in table.d_values:
        row = [str(d)]
        for col in table.columns:
            v = table.value(d, col)
            row.append("" if v is None else str(v))
        rows.append(row)
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    def fmt(row):
        return "| " + " | ".join(c.rjust(w) for c, w in zip(row, widths)) + " |"
    lines = [fmt(header), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines.extend(fmt(r) for r in rows)
    return "\n".join(lines) + "\n"
