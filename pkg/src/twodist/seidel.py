"""Seidel-matrix constructions and their eigenvalue-structure checks.

A two-distance set is encoded as a Seidel matrix (zero diagonal, +-1 off
the diagonal) in two ways:

* euclidean: from the squared-distance matrix, via the base-point matrix
  M_ij = q_in + q_jn - q_ij and an auxiliary two-block matrix D,
  S = (2M + D - (1 + delta^2) I) / (delta^2 - 1), of order n - 1;
* spherical: from the Gram matrix with inner products a < b, entry -1
  where the Gram entry is a and +1 where it is b, of order n.

Both constructions are carried out in exact rational arithmetic and the
+-1/0 pattern is asserted, never rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .configurations import NotTwoDistanceError
from .linalg import (
    DEFAULT_TOL,
    Spectrum,
    SymMatrix,
    as_fraction,
    eig_sym,
    format_rational,
    group_spectrum,
    offdiag_values,
    spectral_radius,
)


class SeidelMatrix:
    """Symmetric integer matrix with zero diagonal and +-1 off-diagonal."""

    __slots__ = ("_rows", "_order")

    def __init__(self, rows: Sequence[Sequence[int]]):
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(entries)
        if n < 1:
            raise ValueError("Seidel matrix must have order >= 1")
        for i, row in enumerate(entries):
            if len(row) != n:
                raise ValueError("Seidel matrix must be square")
            if row[i] != 0:
                raise ValueError(f"diagonal entry ({i}, {i}) must be 0")
        for i in range(n):
            for j in range(i + 1, n):
                if entries[i][j] not in (-1, 1):
                    raise ValueError(f"off-diagonal entry ({i}, {j}) must be +-1")
                if entries[i][j] != entries[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        object.__setattr__(self, "_rows", entries)
        object.__setattr__(self, "_order", n)

    def __setattr__(self, name, value):
        raise AttributeError("SeidelMatrix is immutable")

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def entry(self, i: int, j: int) -> int:
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SeidelMatrix) and self._rows == other._rows

    def __repr__(self) -> str:
        return f"SeidelMatrix(order={self._order})"

    def to_sym(self) -> SymMatrix:
        return SymMatrix(self._rows)

    def to_float(self) -> np.ndarray:
        return np.array(self._rows, dtype=float)

    def square_exact(self) -> np.ndarray:
        """S @ S with exact integer arithmetic (entries fit in int64)."""
        a = np.array(self._rows, dtype=np.int64)
        return a @ a

    def trace_square_exact(self) -> int:
        return int(np.trace(self.square_exact()))

    @staticmethod
    def from_sym(m: SymMatrix) -> "SeidelMatrix":
        rows = []
        for row in m.rows:
            out = []
            for v in row:
                if v.denominator != 1:
                    raise ValueError(f"entry {format_rational(v)} is not an integer")
                out.append(int(v))
            rows.append(out)
        return SeidelMatrix(rows)


@dataclass(frozen=True)
class EuclideanSeidelParams:
    """Parameters of the euclidean construction.

    ``h`` counts points at squared distance 1 from the base point after
    rescaling; ``permutation`` is the point order consumed by the builder
    (near neighbors first, base point last).  ``d`` is the ambient
    dimension when known.
    """

    n: int
    delta_sq: Fraction
    h: int
    d: int | None = None
    permutation: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2 points")
        if not 0 <= self.h <= self.n - 1:
            raise ValueError(f"h must lie in [0, {self.n - 1}]")
        if self.delta_sq <= 0:
            raise ValueError("delta_sq must be positive")
        if self.delta_sq == 1:
            raise ValueError("delta_sq must differ from 1")


@dataclass(frozen=True)
class SphericalSeidelParams:
    n: int
    a: Fraction
    b: Fraction
    d: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2 points")
        if not (-1 <= self.a < self.b < 1):
            raise ValueError(f"need -1 <= a < b < 1, got a={self.a}, b={self.b}")


@dataclass(frozen=True)
class StructureReport:
    """Outcome of an eigenvalue-structure check.

    ``target_value`` is the predicted repeated eigenvalue and
    ``target_mult`` its observed multiplicity; ``passes`` reports whether
    the multiplicity and position requirements hold (vacuously true when
    the required multiplicity is nonpositive).
    """

    smallest_eig: float
    smallest_mult: int
    target_value: float
    target_mult: int
    passes: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "smallest_eig": self.smallest_eig,
            "smallest_mult": self.smallest_mult,
            "target_value": self.target_value,
            "target_mult": self.target_mult,
            "passes": self.passes,
            "note": self.note,
        }


def cayley_menger(dist_sq: SymMatrix) -> SymMatrix:
    """Base-point matrix of a squared-distance matrix, order n - 1.

    Entry (i, j) is q_in + q_jn - q_ij with the last point as base; the
    diagonal entry i equals 2 q_in.  PSD-ness with rank at most d is
    equivalent to realizability in R^d (Lisonek's criterion).
    """
    n = dist_sq.order
    if n < 3:
        raise ValueError("need at least 3 points")
    q = dist_sq.rows
    base = n - 1
    rows = [
        [q[i][base] + q[j][base] - q[i][j] for j in range(n - 1)]
        for i in range(n - 1)
    ]
    return SymMatrix(rows)


def build_D(params: EuclideanSeidelParams) -> SymMatrix:
    """The two-block all-ones auxiliary matrix of the euclidean construction.

    Top-left h x h block (-3 + delta^2) J, off-diagonal blocks
    -(1 + delta^2) J, bottom-right (1 - 3 delta^2) J; order n - 1.
    """
    n, h = params.n, params.h
    d2 = params.delta_sq
    top = Fraction(-3) + d2
    off = -(1 + d2)
    bottom = 1 - 3 * d2
    size = n - 1
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i < h and j < h:
                row.append(top)
            elif i >= h and j >= h:
                row.append(bottom)
            else:
                row.append(off)
        rows.append(row)
    return SymMatrix(rows)


def spectrum_D_closed_form(params: EuclideanSeidelParams) -> tuple[float, float]:
    """The two nonzero eigenvalues (a1, a2) of build_D, with a2 < 0 < a1.

    Valid when both blocks are nonempty (1 <= h <= n - 2); the remaining
    n - 3 eigenvalues are 0.  At the boundary h in {0, n-1} the matrix
    degenerates to a single all-ones block whose spectrum is
    {0^(n-2), coefficient * (n-1)} instead, and this closed form does not
    apply.
    """
    n, h = params.n, params.h
    if not 1 <= h <= n - 2:
        raise ValueError(
            "closed form needs both blocks nonempty (1 <= h <= n-2); "
            "a boundary h gives a single all-ones block"
        )
    d2 = params.delta_sq
    p = -2 * (1 - d2) * h + Fraction(1 - 3 * d2, 2) * (n - 1)
    radicand = (
        2 * (n - 1) * h * (1 - d2) * (1 + d2)
        + (n - 1) ** 2 * Fraction(1 - 3 * d2, 2) ** 2
    )
    # p^2 - q^2 = -4 (1 - d2)^2 h (n - h - 1) < 0 for interior h
    assert radicand > 0, "radicand must be positive for nonempty blocks"
    root = math.sqrt(radicand)
    a1 = float(p) + root
    a2 = float(p) - root
    assert a2 < 0 < a1
    return a1, a2


def _canonical_delta_sq(delta_sq: Fraction) -> Fraction:
    """Normalize so the squared ratio exceeds 1 (larger distance over 1)."""
    if delta_sq <= 0:
        raise ValueError("delta_sq must be positive")
    if delta_sq == 1:
        raise ValueError("delta_sq must differ from 1")
    return delta_sq if delta_sq > 1 else 1 / delta_sq


def seidel_euclidean(
    dist_sq: SymMatrix,
    delta_sq: object | None = None,
    tol: float | None = None,
) -> tuple[SeidelMatrix, EuclideanSeidelParams]:
    """Seidel matrix of a euclidean two-distance set, order n - 1.

    The squared-distance matrix is rescaled so its two values become
    exactly {1, delta^2} with delta^2 > 1, and the points are permuted so
    the base point's near neighbors come first.  Value detection is exact;
    ``delta_sq``, when supplied, is cross-checked against the matrix (both
    normalizations are accepted).  Every resulting entry is asserted to
    land in {0, +-1} exactly.
    """
    del tol  # detection is exact; accepted for interface symmetry
    n = dist_sq.order
    if n < 3:
        raise ValueError("need at least 3 points")
    for i in range(n):
        if dist_sq.entry(i, i) != 0:
            raise ValueError("squared-distance matrix must have zero diagonal")
    values = offdiag_values(dist_sq)
    if any(v <= 0 for v in values):
        raise ValueError("distances must be positive (duplicate points?)")
    if len(values) == 1:
        raise NotTwoDistanceError("equidistant set, not two-distance", clusters=values)
    if len(values) > 2:
        raise NotTwoDistanceError(
            f"not a two-distance set: {len(values)} distinct values",
            clusters=values,
        )
    v1, v2 = values
    ratio = v2 / v1
    if delta_sq is not None:
        supplied = _canonical_delta_sq(as_fraction(delta_sq))
        if supplied != ratio:
            raise ValueError(
                f"delta_sq {format_rational(supplied)} does not match the "
                f"matrix ratio {format_rational(ratio)}"
            )
    scaled = dist_sq / v1
    base = n - 1
    near = [i for i in range(n - 1) if scaled.entry(i, base) == 1]
    far = [i for i in range(n - 1) if scaled.entry(i, base) != 1]
    perm = tuple(near + far + [base])
    params = EuclideanSeidelParams(
        n=n, delta_sq=ratio, h=len(near), permutation=perm
    )
    q = scaled.map_rows(perm)
    m = cayley_menger(q)
    numerator = m.scaled(2) + build_D(params) - SymMatrix.identity(n - 1).scaled(1 + ratio)
    s_sym = numerator / (ratio - 1)
    rows = []
    for i in range(n - 1):
        row = []
        for j in range(n - 1):
            v = s_sym.entry(i, j)
            expected = (0,) if i == j else (-1, 1)
            if v.denominator != 1 or int(v) not in expected:
                raise RuntimeError(
                    f"entry not +-1: position ({i}, {j}) evaluated to "
                    f"{format_rational(v)}; construction invariant violated"
                )
            row.append(int(v))
        rows.append(row)
    return SeidelMatrix(rows), params


def seidel_spherical(g: SymMatrix, a: object, b: object) -> SeidelMatrix:
    """Seidel matrix of a spherical two-distance Gram matrix, order n.

    Entry -1 where the Gram entry equals a, +1 where it equals b; any other
    off-diagonal value is rejected.
    """
    af, bf = as_fraction(a), as_fraction(b)
    SphericalSeidelParams(n=max(g.order, 2), a=af, b=bf)  # range validation
    n = g.order
    rows = []
    for i in range(n):
        if g.entry(i, i) != 1:
            raise ValueError(f"Gram diagonal must be all ones (row {i})")
        row = []
        for j in range(n):
            if i == j:
                row.append(0)
                continue
            v = g.entry(i, j)
            if v == af:
                row.append(-1)
            elif v == bf:
                row.append(1)
            else:
                raise ValueError(
                    "not a spherical two-distance Gram matrix: entry "
                    f"({i}, {j}) = {format_rational(v)} is neither a nor b"
                )
        rows.append(row)
    return SeidelMatrix(rows)


def _resolve_tol(eigs: Sequence[float], tol: float | None) -> float:
    if tol is not None:
        return tol
    return DEFAULT_TOL * (1.0 + spectral_radius(eigs))


def check_structure_euclidean(
    s: SeidelMatrix,
    d: int,
    delta_sq: object,
    tol: float | None = None,
) -> StructureReport:
    """Check the predicted eigenvalue structure of a euclidean Seidel matrix.

    The value (1 + delta^2)/(1 - delta^2) must appear with multiplicity at
    least n - d - 3, with at most one eigenvalue strictly below it.  A
    nonpositive required multiplicity is a vacuous pass.
    """
    d2 = _canonical_delta_sq(as_fraction(delta_sq))
    n = s.order + 1
    required = n - d - 3
    eigs = eig_sym(s)
    eff = _resolve_tol(eigs, tol)
    spectrum = group_spectrum(eigs, eff)
    target = float((1 + d2) / (1 - d2))
    smallest_eig, smallest_mult = spectrum.clusters[0]
    target_mult = spectrum.multiplicity_near(target, eff)
    below_mult = sum(m for v, m in spectrum.clusters if v < target - eff)
    if required <= 0:
        return StructureReport(
            smallest_eig, smallest_mult, target, target_mult,
            passes=True, note="vacuous (n - d - 3 <= 0)",
        )
    passes = target_mult >= required and below_mult <= 1
    return StructureReport(smallest_eig, smallest_mult, target, target_mult, passes)


def check_structure_spherical(
    s: SeidelMatrix,
    d: int,
    a: object,
    b: object,
    tol: float | None = None,
) -> StructureReport:
    """Check the predicted eigenvalue structure of a spherical Seidel matrix.

    The value (a + b - 2)/(b - a) must appear with multiplicity at least
    n - d - 1.  For a + b < 0 it must be the smallest eigenvalue; for
    a + b >= 0 at most one eigenvalue may lie strictly below it.
    """
    af, bf = as_fraction(a), as_fraction(b)
    SphericalSeidelParams(n=max(s.order, 2), a=af, b=bf)
    n = s.order
    required = n - d - 1
    eigs = eig_sym(s)
    eff = _resolve_tol(eigs, tol)
    spectrum = group_spectrum(eigs, eff)
    target = float((af + bf - 2) / (bf - af))
    smallest_eig, smallest_mult = spectrum.clusters[0]
    target_mult = spectrum.multiplicity_near(target, eff)
    if required <= 0:
        return StructureReport(
            smallest_eig, smallest_mult, target, target_mult,
            passes=True, note="vacuous (n - d - 1 <= 0)",
        )
    if af + bf < 0:
        passes = abs(smallest_eig - target) <= eff and smallest_mult >= required
        return StructureReport(
            smallest_eig, smallest_mult, target, target_mult, passes
        )
    below_mult = sum(m for v, m in spectrum.clusters if v < target - eff)
    passes = target_mult >= required and below_mult <= 1
    return StructureReport(smallest_eig, smallest_mult, target, target_mult, passes)


def _is_odd_prime(q: int) -> bool:
    if q < 3 or q % 2 == 0:
        return False
    return all(q % p for p in range(3, math.isqrt(q) + 1, 2))


def paley_conference_seidel(q: int = 5) -> SeidelMatrix:
    """Symmetric conference matrix of order q + 1 from quadratic residues.

    Requires an odd prime q with q = 1 (mod 4), so that the quadratic
    character is even and the matrix symmetric.  The result satisfies
    S^2 = q I exactly; for q = 5 it is the Seidel matrix of the six
    icosahedral diagonals (6 equiangular lines in R^3).
    """
    if not _is_odd_prime(q) or q % 4 != 1:
        raise ValueError("q must be an odd prime congruent to 1 mod 4")
    residues = {pow(x, 2, q) for x in range(1, q)}
    n = q + 1
    rows = [[0] * n for _ in range(n)]
    for j in range(1, n):
        rows[0][j] = rows[j][0] = 1
    for i in range(1, n):
        for j in range(i + 1, n):
            sign = 1 if (j - i) % q in residues else -1
            rows[i][j] = rows[j][i] = sign
    return SeidelMatrix(rows)


def clebsch_seidel() -> SeidelMatrix:
    """Order-16 two-eigenvalue Seidel matrix from the Clebsch graph.

    Vertices are the 4-bit masks, adjacent when their difference is a
    standard basis vector or the all-ones mask; S = J - I - 2A has spectrum
    {(-3)^10, 5^6} and realizes 16 equiangular lines in R^6.
    """
    gens = {0b0001, 0b0010, 0b0100, 0b1000, 0b1111}
    rows = [
        [0 if i == j else (-1 if (i ^ j) in gens else 1) for j in range(16)]
        for i in range(16)
    ]
    return SeidelMatrix(rows)


def triangular_graph_seidel(m: int) -> SeidelMatrix:
    """Seidel matrix of the pair-intersection pattern on 2-subsets.

    Entry +1 when two pairs from an m-set share an element, -1 when they
    are disjoint; order C(m, 2).  For m = 8 it has exactly two eigenvalues,
    {(-3)^21, 9^7}, and realizes 28 equiangular lines in R^7 at angle 1/3.
    """
    if m < 4:
        raise ValueError("need m >= 4 so that disjoint pairs exist")
    labels = list(combinations(range(m), 2))
    n = len(labels)
    rows = [[0] * n for _ in range(n)]
    for p in range(n):
        sp = set(labels[p])
        for r in range(p + 1, n):
            sign = 1 if sp & set(labels[r]) else -1
            rows[p][r] = rows[r][p] = sign
    return SeidelMatrix(rows)
