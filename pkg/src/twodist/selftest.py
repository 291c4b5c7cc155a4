"""Built-in oracle checks, runnable without pytest via ``twodist selftest``.

Each check recomputes a derived quantity by an independent route (dense
eigensolves against closed forms, exact integer identities, published
table values) and fails loudly on any disagreement.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .bounds import (
    bound_spherical_pos,
    default_table_spec,
    equality_spectrum,
    make_table,
)
from .configurations import (
    cross_polytope,
    distance_sq_matrix,
    gram,
    lisonek_realizable,
    simplex_midpoints,
    unit_square,
)
from .correspondence import equiangular_to_spherical, spherical_to_equiangular
from .etf import bundled_catalog, etf_signature_test
from .linalg import SymMatrix, eig_sym, verify_weyl
from .reference import compare_with_published
from .seidel import (
    EuclideanSeidelParams,
    build_D,
    cayley_menger,
    check_structure_euclidean,
    check_structure_spherical,
    seidel_euclidean,
    seidel_spherical,
    spectrum_D_closed_form,
    triangular_graph_seidel,
)

_DELTA_CHOICES = (Fraction(2), Fraction(3, 2), Fraction(5, 3), Fraction(3))


def _check_auxiliary_closed_form() -> str:
    rng = np.random.default_rng(20250810)
    trials = 80
    for _ in range(trials):
        n = int(rng.integers(3, 41))
        h = int(rng.integers(1, n - 1))
        d2 = _DELTA_CHOICES[int(rng.integers(len(_DELTA_CHOICES)))]
        params = EuclideanSeidelParams(n=n, delta_sq=d2, h=h)
        a1, a2 = spectrum_D_closed_form(params)
        assert a2 < 0 < a1
        eigs = eig_sym(build_D(params))
        scale = 1e-8 * (1.0 + max(abs(a1), abs(a2)))
        assert abs(eigs[0] - a2) <= scale and abs(eigs[-1] - a1) <= scale
        zeros = sum(1 for v in eigs if abs(v) <= scale)
        assert zeros == n - 3, f"expected {n - 3} zero eigenvalues, saw {zeros}"
    return f"{trials} random parameter draws agree with the dense eigensolve"


def _euclidean_fixture_blocks(d: int):
    dist = distance_sq_matrix(simplex_midpoints(d))
    s, params = seidel_euclidean(dist)
    values = sorted({dist.entry(i, j) for i in range(dist.order) for j in range(i + 1, dist.order)})
    scaled = (dist / values[0]).map_rows(params.permutation)
    return s, params, cayley_menger(scaled)


def _check_seidel_validity() -> str:
    count = 0
    for d in range(3, 7):
        s, _, _ = _euclidean_fixture_blocks(d)
        m = s.order
        assert s.trace_square_exact() == m * (m - 1)
        count += 1
    for d in range(2, 6):
        s = seidel_spherical(gram(cross_polytope(d)), -1, 0)
        m = s.order
        assert s.trace_square_exact() == m * (m - 1)
        count += 1
    s = triangular_graph_seidel(8)
    assert s.trace_square_exact() == 28 * 27
    return f"{count + 1} fixture matrices satisfy the exact Seidel identities"


def _check_structure_theorems() -> str:
    s, params, _ = _euclidean_fixture_blocks(5)
    rep = check_structure_euclidean(s, 5, params.delta_sq)
    assert rep.passes and rep.target_mult >= 7
    s4 = seidel_spherical(gram(cross_polytope(4)), -1, 0)
    rep4 = check_structure_spherical(s4, 4, -1, 0)
    assert rep4.passes and rep4.smallest_mult == 3
    return "euclidean and spherical structure checks pass on the fixtures"


def _check_equality_case() -> str:
    s = triangular_graph_seidel(8)
    res = etf_signature_test(s)
    assert res.is_two_eigenvalue and res.mu == 6
    assert (res.rho1, res.rho2) == (9.0, -3.0)
    assert (res.mult1, res.mult2) == (7, 21)
    assert bound_spherical_pos(7, 3).cardinality_bound == 28
    forced = equality_spectrum(28, 7, "spherical")
    assert forced.clusters == ((-3.0, 21), (9.0, 7))
    return "28-point system meets the bound with the forced spectrum and mu = 6"


def _check_round_trip() -> str:
    for d in range(3, 6):
        g = gram(cross_polytope(d))
        sys_ = spherical_to_equiangular(g, -1, 0)
        assert equiangular_to_spherical(sys_, -1) == g
    return "Gram round trip is exact for the a + b < 0 fixtures"


def _check_weyl() -> str:
    for d in range(3, 7):
        _, params, m = _euclidean_fixture_blocks(d)
        assert verify_weyl(m.scaled(2), build_D(params)).ok
    rng = np.random.default_rng(42)
    for _ in range(20):
        n = 10
        signs = rng.integers(0, 2, size=(n, n)) * 2 - 1
        sym = np.triu(signs, 1)
        a = SymMatrix((sym + sym.T).tolist())
        diag = rng.integers(-5, 6, size=n)
        b = SymMatrix(np.diag(diag).tolist())
        assert verify_weyl(a, b).ok
    return "perturbation bounds hold on fixtures and 20 random pairs"


def _check_lisonek() -> str:
    sq = distance_sq_matrix(unit_square())
    assert lisonek_realizable(sq, 2) and not lisonek_realizable(sq, 1)
    for d in (3, 5):
        dist = distance_sq_matrix(simplex_midpoints(d))
        assert lisonek_realizable(dist, d) and not lisonek_realizable(dist, d - 1)
    return "realizability criterion matches ground truth on the fixtures"


def _check_tables() -> str:
    t2 = make_table(default_table_spec("table2"))
    diffs2 = compare_with_published(t2)
    assert not diffs2, f"euclidean table diverges: {diffs2}"
    t3 = make_table(default_table_spec("table3"))
    bad3 = {(r["d"], r["column"]) for r in compare_with_published(t3)}
    assert bad3 == {(d, "k=5") for d in range(28, 34)}, f"unexpected diffs: {bad3}"
    t4 = make_table(default_table_spec("table4"), bundled_catalog())
    diffs4 = compare_with_published(t4)
    assert {(r["d"], r["column"]) for r in diffs4} == {
        (d, "m5_minus") for d in (10, 11, 13, 15, 17)
    }
    assert all("ceiling" in r["note"] for r in diffs4)
    return "tables match the published values up to the documented cells"


CHECKS = (
    ("auxiliary-spectrum-closed-form", _check_auxiliary_closed_form),
    ("seidel-validity", _check_seidel_validity),
    ("structure-theorems", _check_structure_theorems),
    ("equality-case-28", _check_equality_case),
    ("correspondence-round-trip", _check_round_trip),
    ("weyl-perturbation", _check_weyl),
    ("realizability", _check_lisonek),
    ("published-tables", _check_tables),
)


def run_selftest(verbose: bool = True) -> int:
    failures = 0
    for name, check in CHECKS:
        try:
            detail = check()
        except Exception as exc:  # report and keep going
            failures += 1
            if verbose:
                print(f"FAIL {name}: {exc}")
            continue
        if verbose:
            print(f"PASS {name}: {detail}")
    if verbose:
        total = len(CHECKS)
        print(f"{total - failures}/{total} checks passed")
    return 0 if failures == 0 else 1
