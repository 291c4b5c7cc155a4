"""Equiangular-tight-frame detection on Seidel matrices and the
catalog-driven refinement of integer-valued bounds.

A Seidel matrix Q of order n is the signature matrix of an ETF exactly
when Q^2 = (n - 1) I + mu Q for some (necessarily integer) mu, i.e. when Q
has exactly two eigenvalues.  A bound that is met with equality forces such
a matrix to exist, so a catalog entry recording that no ETF of the matching
size exists lowers an exactly-integer bound by one.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources

from .bounds import (
    BoundResult,
    bound_euclidean,
    bound_spherical_neg,
    bound_spherical_pos,
)
from .linalg import spectrum_of
from .seidel import SeidelMatrix

_EXISTS_VALUES = ("yes", "no", "unknown")


@dataclass(frozen=True)
class EtfRecord:
    """Existence record for an ETF of n_vectors unit vectors in R^dim."""

    n_vectors: int
    dim: int
    exists: str
    provenance: str = ""

    def __post_init__(self):
        if not self.n_vectors > self.dim >= 1:
            raise ValueError("need n_vectors > dim >= 1")
        if self.exists not in _EXISTS_VALUES:
            raise ValueError(f"exists must be one of {_EXISTS_VALUES}")
        if self.exists in ("yes", "no") and not self.provenance:
            raise ValueError("yes/no records need a provenance")

    def as_dict(self) -> dict:
        return {
            "n_vectors": self.n_vectors,
            "dim": self.dim,
            "exists": self.exists,
            "provenance": self.provenance,
        }


class EtfCatalog:
    """Immutable lookup table of ETF existence records."""

    def __init__(self, records):
        table = {}
        for rec in records:
            key = (rec.n_vectors, rec.dim)
            if key in table:
                raise ValueError(f"duplicate catalog entry for {key}")
            table[key] = rec
        self._table = table

    def __len__(self) -> int:
        return len(self._table)

    @property
    def records(self) -> tuple[EtfRecord, ...]:
        return tuple(self._table[k] for k in sorted(self._table))

    def query(self, n_vectors: int, dim: int) -> EtfRecord:
        """Exact lookup; absent entries come back as ``exists='unknown'``."""
        rec = self._table.get((n_vectors, dim))
        if rec is not None:
            return rec
        return EtfRecord(n_vectors=n_vectors, dim=dim, exists="unknown")


def catalog_load(path) -> EtfCatalog:
    """Load a catalog CSV with columns n_vectors,dim,exists,provenance."""
    records = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        expected = {"n_vectors", "dim", "exists", "provenance"}
        if reader.fieldnames is None or set(reader.fieldnames) != expected:
            raise ValueError(
                f"catalog header must be n_vectors,dim,exists,provenance, "
                f"got {reader.fieldnames}"
            )
        for lineno, row in enumerate(reader, start=2):
            try:
                records.append(
                    EtfRecord(
                        n_vectors=int(row["n_vectors"]),
                        dim=int(row["dim"]),
                        exists=row["exists"].strip(),
                        provenance=row["provenance"].strip(),
                    )
                )
            except (TypeError, ValueError) as exc:
                raise ValueError(f"malformed catalog row at line {lineno}: {exc}")
    return EtfCatalog(records)


def catalog_query(catalog: EtfCatalog, n_vectors: int, dim: int) -> EtfRecord:
    return catalog.query(n_vectors, dim)


def bundled_catalog() -> EtfCatalog:
    """The catalog shipped with the package.

    It contains only entries attested in the literature or verified by
    constructing the corresponding two-eigenvalue Seidel matrix in the test
    suite; extend it with your own CSV for anything else.
    """
    path = resources.files("twodist").joinpath("data/etf_catalog.csv")
    with resources.as_file(path) as concrete:
        return catalog_load(concrete)


@dataclass(frozen=True)
class EtfTestResult:
    """Outcome of the two-eigenvalue signature test.

    When the exact identity Q^2 = (n - 1) I + mu Q holds, mu is an integer
    and ``inferred_dim`` is the multiplicity of the larger eigenvalue rho1,
    i.e. the dimension of the frame the matrix signs.
    """

    is_two_eigenvalue: bool
    mu: int | float | None
    rho1: float
    rho2: float
    mult1: int
    mult2: int
    inferred_dim: int | None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "is_two_eigenvalue": self.is_two_eigenvalue,
            "mu": self.mu,
            "rho1": self.rho1,
            "rho2": self.rho2,
            "mult1": self.mult1,
            "mult2": self.mult2,
            "inferred_dim": self.inferred_dim,
            "note": self.note,
        }


def etf_signature_test(q: SeidelMatrix, tol: float | None = None) -> EtfTestResult:
    """Decide whether Q^2 - (n - 1) I is an integer multiple of Q.

    The decision is made in exact integer arithmetic; the spectral
    two-cluster test is used only as a fallback when no integer mu fits.
    """
    n = q.order
    sq = q.square_exact()
    residue = sq.copy()
    for i in range(n):
        residue[i][i] -= n - 1
    mus = set()
    diag_clean = all(residue[i][i] == 0 for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            # off-diagonal entries of Q are +-1, so residue/Q = residue * Q
            mus.add(int(residue[i][j]) * q.entry(i, j))
    if diag_clean and len(mus) == 1:
        mu = mus.pop()
        disc = mu * mu + 4 * (n - 1)
        root = math.isqrt(disc)
        if root * root == disc:
            rho1 = (mu + root) // 2
            rho2 = (mu - root) // 2
            mult1 = Fraction(n * (root - mu), 2 * root)
            assert mult1.denominator == 1, "trace forces integer multiplicities"
            mult1 = int(mult1)
            mult2 = n - mult1
            return EtfTestResult(
                True, mu, float(rho1), float(rho2), mult1, mult2, mult1
            )
        # irrational eigenvalue pairs are algebraic conjugates with equal
        # multiplicity, which forces mu = trace-related = 0 and even n
        assert mu == 0 and n % 2 == 0
        root_f = math.sqrt(n - 1)
        return EtfTestResult(True, 0, root_f, -root_f, n // 2, n // 2, n // 2)
    spectrum = spectrum_of(q, tol)
    clusters = spectrum.clusters
    if len(clusters) == 2:
        (rho2, mult2), (rho1, mult1) = clusters
        return EtfTestResult(
            True, rho1 + rho2, rho1, rho2, mult1, mult2, mult1,
            note="two clusters numerically; exact signature identity failed",
        )
    return EtfTestResult(
        False, None, clusters[-1][0], clusters[0][0],
        clusters[-1][1], clusters[0][1], None,
        note=f"{len(clusters)} eigenvalue clusters",
    )


def _apply_refinement(
    base: BoundResult, catalog: EtfCatalog | None, n_vectors: int, dim: int
) -> BoundResult:
    if catalog is None or len(catalog) == 0:
        return replace(base, note="no catalog evidence")
    rec = catalog.query(n_vectors, dim)
    if rec.exists == "no":
        return replace(
            base,
            cardinality_bound=base.cardinality_bound - 1,
            note=(
                f"refined: no ETF with {n_vectors} vectors in R^{dim} "
                f"({rec.provenance})"
            ),
        )
    if rec.exists == "yes":
        return replace(
            base,
            note=f"ETF with {n_vectors} vectors in R^{dim} exists ({rec.provenance})",
        )
    return replace(base, note="no catalog evidence")


def refine_euclidean(d: int, gamma, catalog: EtfCatalog | None) -> BoundResult:
    """Lower an exactly-integer euclidean bound n when the catalog rules out
    an ETF of n - 1 vectors one dimension up."""
    base = bound_euclidean(d, gamma)
    if not base.valid:
        return base
    if base.exact_value.denominator != 1:
        return replace(base, note="bound not an integer; refinement does not apply")
    n = int(base.exact_value)
    return _apply_refinement(base, catalog, n - 1, d + 1)


def refine_spherical(d: int, gamma, catalog: EtfCatalog | None, branch: str) -> BoundResult:
    """Spherical analogue of the integer-bound refinement.

    branch "pos" (a + b >= 0) consults (n, d); branch "neg" consults
    (n, d + 1) through the equiangular-lines correspondence.
    """
    if branch == "pos":
        base = bound_spherical_pos(d, gamma)
        shift = 0
    elif branch == "neg":
        base = bound_spherical_neg(d, gamma)
        shift = 1
    else:
        raise ValueError(f"branch must be 'pos' or 'neg', got {branch!r}")
    if not base.valid:
        return base
    if base.exact_value.denominator != 1:
        return replace(base, note="bound not an integer; refinement does not apply")
    n = int(base.exact_value)
    return _apply_refinement(base, catalog, n, d + shift)
