"""Point configurations, two-distance certification, and canonical fixtures.

Coordinates are exact rationals so that distance and inner-product values
can be compared without tolerances.  Configurations loaded from float data
carry ``exact=False`` and are certified with a tolerance instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    SymMatrix,
    as_fraction,
    format_rational,
    offdiag_values,
    psd_rank,
)

EUCLIDEAN = "euclidean"
SPHERICAL = "spherical"

# Unit-norm slack for configurations built from float data.
_FLOAT_NORM_TOL = 1e-9


class NotTwoDistanceError(ValueError):
    """Raised when a configuration does not attain exactly two values."""

    def __init__(self, message: str, clusters: Sequence | None = None):
        super().__init__(message)
        self.clusters = list(clusters) if clusters is not None else []


class PointConfiguration:
    """n labeled points of one flavor, euclidean or spherical.

    ``dim`` is the declared geometric dimension.  It may be smaller than the
    coordinate length, e.g. for sets given in ambient coordinates with a
    known affine rank.
    """

    __slots__ = ("points", "flavor", "dim", "exact")

    def __init__(self, points, flavor: str, dim: int | None = None, exact: bool = True):
        pts = tuple(tuple(as_fraction(c) for c in p) for p in points)
        if len(pts) < 2:
            raise ValueError("a configuration needs at least 2 points")
        width = len(pts[0])
        if width < 1:
            raise ValueError("points need at least one coordinate")
        if any(len(p) != width for p in pts):
            raise ValueError("dimension mismatch among points")
        if flavor not in (EUCLIDEAN, SPHERICAL):
            raise ValueError(f"unknown flavor {flavor!r}")
        if dim is None:
            dim = width
        if not 1 <= dim <= width:
            raise ValueError(f"declared dimension {dim} outside [1, {width}]")
        if flavor == SPHERICAL:
            for idx, p in enumerate(pts):
                norm_sq = sum(c * c for c in p)
                if exact:
                    if norm_sq != 1:
                        raise ValueError(f"point {idx} not on unit sphere")
                elif abs(float(norm_sq) - 1.0) > _FLOAT_NORM_TOL:
                    raise ValueError(f"point {idx} not on unit sphere")
        self.points = pts
        self.flavor = flavor
        self.dim = dim
        self.exact = exact

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])

    def __repr__(self) -> str:
        return (
            f"PointConfiguration(n={self.n}, flavor={self.flavor!r}, "
            f"dim={self.dim}, exact={self.exact})"
        )


@dataclass(frozen=True)
class TwoDistanceCertificate:
    """Certification that a configuration attains exactly two values.

    ``values`` holds the two squared distances (euclidean) or the two inner
    products a < b (spherical).  ``pair_labels`` maps each unordered index
    pair to 0 (first value) or 1 (second).  For euclidean sets the last
    point is the designated base point: ``h`` counts its neighbors at the
    first (smaller) value and ``base_permutation`` reorders the points so
    those neighbors come first, base point last.
    """

    ok: bool
    flavor: str
    n: int
    values: tuple[Fraction, Fraction]
    counts: tuple[int, int]
    pair_labels: dict
    h: int | None = None
    base_permutation: tuple[int, ...] | None = None

    def squared_ratio(self) -> Fraction:
        if self.flavor != EUCLIDEAN:
            raise ValueError("squared ratio is defined for euclidean certificates")
        return self.values[1] / self.values[0]

    def as_dict(self, include_pairs: bool = False) -> dict:
        out = {
            "ok": self.ok,
            "flavor": self.flavor,
            "n": self.n,
            "values": [format_rational(v) for v in self.values],
            "counts": list(self.counts),
        }
        if self.flavor == EUCLIDEAN:
            out["squared_ratio"] = format_rational(self.squared_ratio())
            out["h"] = self.h
            out["base_permutation"] = list(self.base_permutation)
        if include_pairs:
            out["pair_labels"] = {f"{i},{j}": lab for (i, j), lab in sorted(self.pair_labels.items())}
        return out


@dataclass(frozen=True)
class RealizationResult:
    points: PointConfiguration
    residual: float


def distance_sq_matrix(cfg: PointConfiguration) -> SymMatrix:
    """Exact squared Euclidean distances, zero diagonal."""
    pts = cfg.points
    n = len(pts)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = sum((a - b) * (a - b) for a, b in zip(pts[i], pts[j]))
            rows[i][j] = rows[j][i] = d
    return SymMatrix(rows)


def gram(cfg: PointConfiguration) -> SymMatrix:
    """Exact Gram matrix of a spherical configuration (unit diagonal)."""
    if cfg.flavor != SPHERICAL:
        raise ValueError("Gram matrix requires a spherical configuration")
    pts = cfg.points
    n = len(pts)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = sum(a * b for a, b in zip(pts[i], pts[j]))
            rows[i][j] = rows[j][i] = v
        if cfg.exact and rows[i][i] != 1:
            raise ValueError(f"point {i} not on unit sphere")
    return SymMatrix(rows)


def _cluster_values(pairs: list, tol: float) -> list[list]:
    """Greedy clustering of (value, pair) items sorted by value."""
    clusters: list[list] = []
    current: list = []
    total = 0.0
    for value, pair in pairs:
        fv = float(value)
        if current and abs(fv - total / len(current)) <= tol:
            current.append((value, pair))
            total += fv
        else:
            if current:
                clusters.append(current)
            current = [(value, pair)]
            total = fv
    clusters.append(current)
    return clusters


def certify_two_distance(
    cfg: PointConfiguration, tol: float | None = None
) -> TwoDistanceCertificate:
    """Certify that exactly two distinct values occur among all pairs.

    Exact configurations are certified with exact value comparison by
    default (tol 0); float-backed configurations get a small relative
    tolerance.  Raises NotTwoDistanceError when the count of value clusters
    is not 2.
    """
    if cfg.flavor == EUCLIDEAN:
        matrix = distance_sq_matrix(cfg)
    else:
        matrix = gram(cfg)
    n = cfg.n
    pairs = sorted(
        ((matrix.entry(i, j), (i, j)) for i in range(n) for j in range(i + 1, n)),
        key=lambda item: item[0],
    )
    if tol is None:
        tol = 0.0 if cfg.exact else 1e-9 * (1.0 + max(abs(float(v)) for v, _ in pairs))
    clusters = _cluster_values(pairs, tol)
    if cfg.flavor == EUCLIDEAN and clusters[0][0][0] == 0:
        raise ValueError("duplicate points (zero distance)")
    if cfg.flavor == SPHERICAL and clusters[-1][0][0] == 1:
        raise ValueError("duplicate points (inner product 1)")
    if len(clusters) == 1:
        raise NotTwoDistanceError(
            "equidistant set, not two-distance", clusters=[clusters[0][0][0]]
        )
    if len(clusters) > 2:
        reps = [c[0][0] for c in clusters]
        raise NotTwoDistanceError(
            f"not a two-distance set: {len(clusters)} distinct values "
            f"{[format_rational(Fraction(r)) for r in reps]}",
            clusters=reps,
        )
    values = tuple(
        sum((Fraction(v) for v, _ in c), Fraction(0)) / len(c) for c in clusters
    )
    if cfg.flavor == SPHERICAL:
        a, b = values
        if not (-1 <= a < b < 1):
            raise ValueError(f"inner products must satisfy -1 <= a < b < 1, got {a}, {b}")
    labels = {}
    for idx, cluster in enumerate(clusters):
        for _, pair in cluster:
            labels[pair] = idx
    h = None
    base_perm = None
    if cfg.flavor == EUCLIDEAN:
        base = n - 1
        near = [i for i in range(n - 1) if labels[(i, base)] == 0]
        far = [i for i in range(n - 1) if labels[(i, base)] == 1]
        h = len(near)
        base_perm = tuple(near + far + [base])
    return TwoDistanceCertificate(
        ok=True,
        flavor=cfg.flavor,
        n=n,
        values=(values[0], values[1]),
        counts=(sum(1 for lab in labels.values() if lab == 0),
                sum(1 for lab in labels.values() if lab == 1)),
        pair_labels=labels,
        h=h,
        base_permutation=base_perm,
    )


def simplex_midpoints(d: int) -> PointConfiguration:
    """Midpoints of the edges of a regular simplex, C(d+1, 2) points.

    Returned in ambient (d+1)-coordinates with declared affine rank d, so
    every coordinate stays rational.  For d >= 3 this is a two-distance set
    with squared distances 1/2 and 1.
    """
    if d < 2:
        raise ValueError("simplex midpoints need d >= 2")
    half = Fraction(1, 2)
    points = []
    for i, j in combinations(range(d + 1), 2):
        p = [Fraction(0)] * (d + 1)
        p[i] = half
        p[j] = half
        points.append(p)
    return PointConfiguration(points, EUCLIDEAN, dim=d)


def cross_polytope(d: int) -> PointConfiguration:
    """The 2d unit vectors +-e_1, ..., +-e_d (spherical flavor).

    Inner products are -1 on antipodal pairs and 0 otherwise, the canonical
    fixture with a + b < 0.
    """
    if d < 2:
        raise ValueError("cross-polytope needs d >= 2")
    points = []
    for sign in (1, -1):
        for i in range(d):
            p = [Fraction(0)] * d
            p[i] = Fraction(sign)
            points.append(p)
    return PointConfiguration(points, SPHERICAL, dim=d)


def unit_square() -> PointConfiguration:
    """Unit square in the plane; squared distances 1 and 2."""
    return PointConfiguration(
        [(0, 0), (1, 0), (1, 1), (0, 1)], EUCLIDEAN, dim=2
    )


def regular_simplex(d: int) -> PointConfiguration:
    """Vertices e_1, ..., e_{d+1} of a regular simplex (equidistant set)."""
    if d < 1:
        raise ValueError("simplex needs d >= 1")
    points = []
    for i in range(d + 1):
        p = [Fraction(0)] * (d + 1)
        p[i] = Fraction(1)
        points.append(p)
    return PointConfiguration(points, EUCLIDEAN, dim=d)


def centered_unit_gram(cfg: PointConfiguration) -> SymMatrix:
    """Gram matrix of the configuration centered at its centroid and scaled
    to the unit sphere.

    Requires all centered points to have the same (nonzero) squared norm.
    The common scale is generally irrational, so the scaled coordinates are
    not representable exactly; the Gram matrix is, and is what gets
    returned.
    """
    pts = cfg.points
    n = len(pts)
    width = cfg.ambient_dim
    centroid = [
        sum(p[c] for p in pts) / n for c in range(width)
    ]
    centered = [tuple(p[c] - centroid[c] for c in range(width)) for p in pts]
    norms = {sum(c * c for c in p) for p in centered}
    if len(norms) != 1:
        raise ValueError("centered norms differ; no common sphere")
    norm_sq = norms.pop()
    if norm_sq == 0:
        raise ValueError("configuration collapses to its centroid")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = sum(a * b for a, b in zip(centered[i], centered[j])) / norm_sq
            rows[i][j] = rows[j][i] = v
    return SymMatrix(rows)


def gram_two_values(g: SymMatrix) -> tuple[Fraction, Fraction]:
    """The two distinct off-diagonal values of a two-distance Gram matrix."""
    values = offdiag_values(g)
    if len(values) != 2:
        raise NotTwoDistanceError(
            f"expected exactly 2 distinct off-diagonal values, found {len(values)}",
            clusters=values,
        )
    return values[0], values[1]


def realize_gram(g: SymMatrix, dim: int, tol: float | None = None) -> RealizationResult:
    """Recover points from a PSD Gram matrix via its eigendecomposition.

    Returns n points in dimension ``dim`` whose Gram matrix reproduces g up
    to the reported residual.  Spherical flavor iff the diagonal of g is
    exactly all ones.
    """
    if tol is None:
        tol = DEFAULT_TOL
    report = psd_rank(g, tol)
    if not report.is_psd:
        raise ValueError(f"indefinite Gram (min eigenvalue {report.min_eigenvalue:.3e})")
    if report.numeric_rank > dim:
        raise ValueError(
            f"rank exceeds target dimension: rank {report.numeric_rank} > {dim}"
        )
    gf = g.to_float()
    w, v = np.linalg.eigh(gf)
    top = np.clip(w[-dim:], 0.0, None)
    x = v[:, -dim:] * np.sqrt(top)
    residual = float(np.max(np.abs(x @ x.T - gf)))
    flavor = SPHERICAL if all(d == 1 for d in g.diagonal()) else EUCLIDEAN
    cfg = PointConfiguration(
        [[float(c) for c in row] for row in x], flavor, dim=dim, exact=False
    )
    return RealizationResult(points=cfg, residual=residual)


def lisonek_realizable(dist_sq: SymMatrix, dim: int, tol: float | None = None) -> bool:
    """Realizability of a squared-distance matrix in R^dim.

    Builds the base-point matrix (q_in + q_jn - q_ij) over the first n-1
    indices and tests PSD-ness and rank at most ``dim``.
    """
    if tol is None:
        tol = DEFAULT_TOL
    n = dist_sq.order
    for i in range(n):
        if dist_sq.entry(i, i) != 0:
            raise ValueError("squared-distance matrix must have zero diagonal")
        for j in range(i + 1, n):
            if dist_sq.entry(i, j) < 0:
                raise ValueError("negative distance entry")
    from .seidel import cayley_menger

    report = psd_rank(cayley_menger(dist_sq), tol)
    return report.is_psd and report.numeric_rank <= dim
