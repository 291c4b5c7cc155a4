"""Dense symmetric-matrix numerics over exact rationals.

Matrices are constructed with exact rational entries so that structural
facts (zero diagonals, +-1 patterns, trace identities) can be checked
without tolerances.  Spectra are computed in floating point on a float view
of the matrix; multiplicity and rank questions go through a tolerance that
is normalized by the spectral radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

# Absolute tolerance for multiplicity clustering and rank decisions,
# applied after normalizing by the spectral radius.  Overridable per call.
DEFAULT_TOL = 1e-7

Rational = Union[int, Fraction]


def as_fraction(value: object) -> Fraction:
    """Coerce an int, Fraction, ``p/q`` string or finite float to a Fraction.

    Float conversion is exact (binary expansion), so round-tripping float
    data through a matrix does not lose information.  Non-finite floats are
    rejected.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite entry: {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def format_rational(x: Fraction) -> str:
    """Render a Fraction as ``p`` or ``p/q``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class SymMatrix:
    """Immutable dense symmetric matrix with exact rational entries."""

    __slots__ = ("_rows", "_order")

    def __init__(self, rows: Sequence[Sequence[object]]):
        entries = tuple(tuple(as_fraction(v) for v in row) for row in rows)
        n = len(entries)
        if n < 1:
            raise ValueError("matrix must have order >= 1")
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if entries[i][j] != entries[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "_rows", entries)
        object.__setattr__(self, "_order", n)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymMatrix) and self._rows == other._rows

    def __repr__(self) -> str:
        return f"SymMatrix(order={self._order})"

    def to_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self._rows], dtype=float)

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(self._order)), Fraction(0))

    def max_abs(self) -> Fraction:
        return max(abs(v) for row in self._rows for v in row)

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self._rows[i][i] for i in range(self._order))

    def map_rows(self, perm: Sequence[int]) -> "SymMatrix":
        """Symmetric permutation: reindex rows and columns by ``perm``."""
        return SymMatrix([[self._rows[pi][pj] for pj in perm] for pi in perm])

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_order(other)
        return SymMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_order(other)
        return SymMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def scaled(self, factor: object) -> "SymMatrix":
        f = as_fraction(factor)
        return SymMatrix([[f * v for v in row] for row in self._rows])

    def __mul__(self, factor: object) -> "SymMatrix":
        return self.scaled(factor)

    __rmul__ = __mul__

    def __truediv__(self, divisor: object) -> "SymMatrix":
        d = as_fraction(divisor)
        if d == 0:
            raise ZeroDivisionError("division of matrix by zero")
        return self.scaled(Fraction(1) / d)

    def _check_order(self, other: "SymMatrix") -> None:
        if self._order != other._order:
            raise ValueError(f"order mismatch: {self._order} vs {other._order}")

    @staticmethod
    def identity(n: int) -> "SymMatrix":
        return SymMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def ones(n: int) -> "SymMatrix":
        return SymMatrix([[1] * n for _ in range(n)])


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues grouped into (value, multiplicity) clusters, ascending."""

    clusters: tuple[tuple[float, int], ...]
    tol: float

    def __post_init__(self):
        if not self.clusters:
            raise ValueError("empty spectrum")
        values = [v for v, _ in self.clusters]
        if any(m < 1 for _, m in self.clusters):
            raise ValueError("cluster multiplicity must be >= 1")
        for prev, cur in zip(values, values[1:]):
            if cur - prev <= self.tol:
                raise ValueError("cluster values must be separated by more than tol")

    @property
    def order(self) -> int:
        return sum(m for _, m in self.clusters)

    def multiplicity_near(self, target: float, tol: float) -> int:
        """Total multiplicity of clusters within ``tol`` of ``target``."""
        return sum(m for v, m in self.clusters if abs(v - target) <= tol)

    def as_dict(self) -> dict:
        return {"clusters": [[v, m] for v, m in self.clusters], "tol": self.tol}


@dataclass(frozen=True)
class PsdReport:
    is_psd: bool
    numeric_rank: int
    min_eigenvalue: float

    def as_dict(self) -> dict:
        return {
            "is_psd": self.is_psd,
            "numeric_rank": self.numeric_rank,
            "min_eigenvalue": self.min_eigenvalue,
        }


@dataclass(frozen=True)
class WeylReport:
    """Per-index verdicts for the additive eigenvalue perturbation bounds.

    Index i (descending order) checks
    lam_i(N) + lam_min(R) <= lam_i(N + R) <= lam_i(N) + lam_max(R).
    """

    ok: bool
    per_index: tuple[bool, ...]
    max_violation: float

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "per_index": list(self.per_index),
            "max_violation": self.max_violation,
        }


def _float_view(m) -> np.ndarray:
    if isinstance(m, np.ndarray):
        return m.astype(float)
    return m.to_float()


def eig_sym(m) -> list[float]:
    """All eigenvalues of the float view, ascending.

    Accepts anything with a ``to_float`` method (SymMatrix, SeidelMatrix)
    or a numpy array.
    """
    return [float(v) for v in np.linalg.eigvalsh(_float_view(m))]


def spectral_radius(eigs: Sequence[float]) -> float:
    return max(abs(eigs[0]), abs(eigs[-1])) if eigs else 0.0


def group_spectrum(eigs: Sequence[float], tol: float) -> Spectrum:
    """Cluster ascending eigenvalues greedily.

    A value joins the current cluster iff it lies within ``tol`` of the
    cluster's running mean; the cluster value is the mean of its members.
    """
    if len(eigs) == 0:
        raise ValueError("empty spectrum")
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    if any(b < a for a, b in zip(eigs, eigs[1:])):
        raise ValueError("eigenvalues must be ascending")
    clusters: list[tuple[float, int]] = []
    total, count = eigs[0], 1
    for v in eigs[1:]:
        mean = total / count
        if abs(v - mean) <= tol:
            total += v
            count += 1
        else:
            clusters.append((total / count, count))
            total, count = v, 1
    clusters.append((total / count, count))
    return Spectrum(tuple(clusters), tol)


def spectrum_of(m, tol: float | None = None) -> Spectrum:
    """Eigendecompose and cluster in one step.

    With ``tol=None`` the default tolerance is scaled by the spectral
    radius, so multiplicity decisions are insensitive to overall scale.
    """
    eigs = eig_sym(m)
    if tol is None:
        tol = DEFAULT_TOL * (1.0 + spectral_radius(eigs))
    return group_spectrum(eigs, tol)


def psd_rank(m, tol: float = DEFAULT_TOL) -> PsdReport:
    """Positive-semidefiniteness and numeric rank at tolerance ``tol``.

    The threshold is tol * max(1, spectral radius).
    """
    eigs = eig_sym(m)
    scale = max(1.0, spectral_radius(eigs))
    cutoff = tol * scale
    return PsdReport(
        is_psd=eigs[0] >= -cutoff,
        numeric_rank=sum(1 for v in eigs if abs(v) > cutoff),
        min_eigenvalue=eigs[0],
    )


def verify_weyl(n: SymMatrix, r: SymMatrix, tol: float = DEFAULT_TOL) -> WeylReport:
    """Check the additive perturbation bounds for every index of N + R."""
    if n.order != r.order:
        raise ValueError(f"order mismatch: {n.order} vs {r.order}")
    eigs_n = eig_sym(n)[::-1]
    eigs_r = eig_sym(r)[::-1]
    eigs_s = eig_sym(n + r)[::-1]
    lam_max_r, lam_min_r = eigs_r[0], eigs_r[-1]
    scale = 1.0 + max(
        spectral_radius(eigs_n[::-1]),
        spectral_radius(eigs_r[::-1]),
        spectral_radius(eigs_s[::-1]),
    )
    slack = tol * scale
    verdicts = []
    worst = 0.0
    for ln, ls in zip(eigs_n, eigs_s):
        lo, hi = ln + lam_min_r, ln + lam_max_r
        violation = max(lo - ls, ls - hi)
        worst = max(worst, violation)
        verdicts.append(violation <= slack)
    return WeylReport(ok=all(verdicts), per_index=tuple(verdicts), max_violation=worst)


def rank_exact(m: SymMatrix) -> int:
    """Rank over the rationals by Gaussian elimination, no tolerance."""
    rows = [list(row) for row in m.rows]
    n = m.order
    rank = 0
    col = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == n:
            break
    return rank


def offdiag_values(m: SymMatrix) -> tuple[Fraction, ...]:
    """Distinct off-diagonal entries, ascending (exact comparison)."""
    seen = {
        m.rows[i][j]
        for i in range(m.order)
        for j in range(i + 1, m.order)
    }
    return tuple(sorted(seen))


def integer_spectrum_exact(
    m: SymMatrix,
    tol: float | None = None,
    max_order: int = 64,
) -> tuple[tuple[int, int], ...] | None:
    """Exact integer spectrum of ``m`` when it has one, else None.

    Float eigenvalues propose integer candidates; each candidate's
    multiplicity is then certified as order - rank(m - c*I) over the
    rationals.  Returns ascending (value, multiplicity) pairs only when the
    certified multiplicities account for the whole spectrum.
    """
    if m.order > max_order:
        return None
    eigs = eig_sym(m)
    if tol is None:
        tol = DEFAULT_TOL * (1.0 + spectral_radius(eigs))
    candidates = []
    for value, _ in group_spectrum(eigs, tol).clusters:
        nearest = round(value)
        if abs(value - nearest) > tol:
            return None
        candidates.append(int(nearest))
    ident = SymMatrix.identity(m.order)
    out = []
    for c in candidates:
        mult = m.order - rank_exact(m - ident.scaled(c))
        if mult <= 0:
            return None
        out.append((c, mult))
    if sum(mult for _, mult in out) != m.order:
        return None
    return tuple(out)
