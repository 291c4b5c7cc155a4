"""Conversions between Seidel matrices, equiangular line systems, and
spherical two-distance sets with a + b < 0.

A Seidel matrix S with smallest eigenvalue lam0 < -1 of multiplicity n - d
yields n equiangular lines in R^d with Gram matrix I - S/lam0 and common
angle -1/lam0.  For a spherical two-distance Gram with a + b < 0 the
smallest Seidel eigenvalue is the rational (a + b - 2)/(b - a), which makes
the whole conversion exact; the reverse direction maps one line system to
a one-parameter family of spherical sets indexed by a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    SymMatrix,
    as_fraction,
    eig_sym,
    format_rational,
    group_spectrum,
    integer_spectrum_exact,
    rank_exact,
    spectral_radius,
)
from .seidel import SeidelMatrix, seidel_spherical


class EquiangularSystem:
    """An equiangular line system: sign pattern, common angle, dimension.

    The Gram matrix is I + alpha * S.  ``alpha`` is kept as an exact
    Fraction whenever the defining eigenvalue is rational; conference-type
    systems have irrational angles (e.g. 1/sqrt(5)) and then only the float
    Gram is available.
    """

    __slots__ = ("seidel", "alpha", "dim")

    def __init__(self, seidel: SeidelMatrix, alpha, dim: int):
        if isinstance(alpha, Fraction):
            ok = 0 < alpha < 1
        else:
            alpha = float(alpha)
            ok = 0.0 < alpha < 1.0
        if not ok:
            raise ValueError(f"common angle must lie in (0, 1), got {alpha}")
        if not 1 <= dim <= seidel.order:
            raise ValueError(f"dimension {dim} outside [1, {seidel.order}]")
        self.seidel = seidel
        self.alpha = alpha
        self.dim = dim

    @property
    def n(self) -> int:
        return self.seidel.order

    @property
    def exact(self) -> bool:
        return isinstance(self.alpha, Fraction)

    def gram(self) -> SymMatrix:
        """Exact Gram matrix; requires a rational angle."""
        if not self.exact:
            raise ValueError("angle is irrational; use gram_float()")
        return SymMatrix.identity(self.n) + self.seidel.to_sym().scaled(self.alpha)

    def gram_float(self) -> np.ndarray:
        return np.eye(self.n) + float(self.alpha) * self.seidel.to_float()

    def __repr__(self) -> str:
        return (
            f"EquiangularSystem(n={self.n}, dim={self.dim}, "
            f"alpha={self.alpha!r})"
        )


@dataclass(frozen=True)
class FamilyParam:
    """One member of the family of spherical sets attached to an angle.

    b is determined by alpha and a; the flags record whether this member
    satisfies a < b, a + b < 0 and b < 1 (invalid members are flagged, not
    rejected).
    """

    alpha: Fraction
    a: Fraction
    b: Fraction
    a_lt_b: bool
    sum_negative: bool
    b_below_1: bool

    @property
    def valid(self) -> bool:
        return self.a_lt_b and self.sum_negative and self.b_below_1

    def as_dict(self) -> dict:
        return {
            "alpha": format_rational(self.alpha),
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "a_lt_b": self.a_lt_b,
            "sum_negative": self.sum_negative,
            "b_below_1": self.b_below_1,
            "valid": self.valid,
        }


def family_param(alpha: object, a: object) -> FamilyParam:
    """b = ((1 - alpha) a + 2 alpha)/(1 + alpha), with validity flags.

    The sum a + b equals 2(a + alpha)/(1 + alpha), so the a + b < 0 branch
    is exactly a < -alpha.
    """
    al = as_fraction(alpha)
    af = as_fraction(a)
    if not 0 < al < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {format_rational(al)}")
    if af < -1:
        raise ValueError(f"a must be at least -1, got {format_rational(af)}")
    b = ((1 - al) * af + 2 * al) / (1 + al)
    return FamilyParam(
        alpha=al,
        a=af,
        b=b,
        a_lt_b=af < b,
        sum_negative=af + b < 0,
        b_below_1=b < 1,
    )


def seidel_to_lines(s: SeidelMatrix, tol: float | None = None) -> EquiangularSystem:
    """Equiangular line system attached to the smallest Seidel eigenvalue.

    Requires smallest eigenvalue lam0 < -1; the Gram matrix I - S/lam0 is
    then PSD with kernel of dimension mult(lam0), the angle is -1/lam0 and
    the system lives in dimension n - mult(lam0).  The angle and
    multiplicity are exact whenever the spectrum is integral.
    """
    eigs = eig_sym(s)
    if tol is None:
        tol = DEFAULT_TOL * (1.0 + spectral_radius(eigs))
    lam0 = eigs[0]
    if lam0 >= -1 - tol:
        raise ValueError(
            f"no equiangular realization at this eigenvalue: smallest "
            f"eigenvalue {lam0:.6g} is not below -1"
        )
    exact = integer_spectrum_exact(s.to_sym(), tol)
    if exact is not None and exact[0][0] < -1:
        value, mult = exact[0]
        return EquiangularSystem(s, Fraction(-1, value), s.order - mult)
    clusters = group_spectrum(eigs, tol).clusters
    mult = clusters[0][1]
    return EquiangularSystem(s, -1.0 / lam0, s.order - mult)


def spherical_to_equiangular(g: SymMatrix, a: object, b: object) -> EquiangularSystem:
    """Exact line system from a spherical two-distance Gram with a + b < 0.

    The common angle is (b - a)/(2 - a - b) and the system lies one
    dimension above the spherical set.
    """
    af, bf = as_fraction(a), as_fraction(b)
    if af + bf >= 0:
        raise ValueError(
            "a + b >= 0: this Gram belongs to the nonnegative-sum bound, "
            "not the equiangular correspondence"
        )
    s = seidel_spherical(g, af, bf)
    lam0 = (af + bf - 2) / (bf - af)
    alpha = (bf - af) / (2 - af - bf)
    n = s.order
    shifted = s.to_sym() - SymMatrix.identity(n).scaled(lam0)
    mult0 = n - rank_exact(shifted)
    eigs = eig_sym(s)
    slack = DEFAULT_TOL * (1.0 + spectral_radius(eigs))
    if mult0 == 0 or eigs[0] < float(lam0) - slack:
        raise ValueError(
            "not a valid spherical two-distance Gram: the predicted "
            "smallest eigenvalue is not the smallest"
        )
    return EquiangularSystem(s, alpha, n - mult0)


def equiangular_to_spherical(sys: EquiangularSystem, a: object) -> SymMatrix:
    """Gram matrix of the spherical set with inner products (a, b) attached
    to a line system, where b is determined by the angle.

    Exact conversion, so the angle must be rational; a must satisfy
    -1 <= a < -alpha so that a + b < 0.
    """
    if not sys.exact:
        raise ValueError("rational common angle required for exact conversion")
    fam = family_param(sys.alpha, a)
    if not fam.sum_negative:
        raise ValueError(
            f"a + b = {format_rational(fam.a + fam.b)} >= 0; "
            f"admissible range is a < {format_rational(-sys.alpha)}"
        )
    af, bf = fam.a, fam.b
    n = sys.n
    return (
        sys.seidel.to_sym().scaled(Fraction(bf - af, 2))
        + SymMatrix.ones(n).scaled(Fraction(af + bf, 2))
        + SymMatrix.identity(n).scaled(Fraction(2 - af - bf, 2))
    )
