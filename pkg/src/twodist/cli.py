"""Command-line front end.

Verbs: certify, seidel, spectrum, bound, table, convert, etf-check,
refine, selftest.  Domain errors exit 1 with a machine-readable
``{"error", "detail"}`` JSON object; usage errors exit 2.  The environment
variable TWODIST_TOL overrides the default tolerance wherever no --tol is
given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import (
    EUCLIDEAN,
    SPHERICAL_NEG,
    SPHERICAL_POS,
    TABLE4,
    Table,
    TableSpec,
    bound_euclidean,
    bound_spherical_neg,
    bound_spherical_pos,
    default_table_spec,
    gamma_from_delta_sq,
    gamma_from_inner_products,
    make_table,
    table_to_csv,
    table_to_markdown,
)
from .configurations import certify_two_distance, distance_sq_matrix, gram
from .correspondence import (
    EquiangularSystem,
    equiangular_to_spherical,
    seidel_to_lines,
    spherical_to_equiangular,
)
from .etf import bundled_catalog, catalog_load, etf_signature_test, refine_euclidean, refine_spherical
from .formats import (
    load_points,
    matrix_to_text,
    parse_rational,
    read_matrix,
    read_seidel,
    write_matrix,
)
from .linalg import DEFAULT_TOL, format_rational, psd_rank, spectrum_of
from .reference import published_cells
from .seidel import SeidelMatrix, seidel_euclidean, seidel_spherical
from .selftest import run_selftest

ENV_TOL = "TWODIST_TOL"

_KIND_ALIASES = {
    "euclidean": EUCLIDEAN,
    "spherical-pos": SPHERICAL_POS,
    "spherical-neg": SPHERICAL_NEG,
}


def _env_tol() -> float | None:
    raw = os.environ.get(ENV_TOL)
    return float(raw) if raw else None


def _resolve_tol(args) -> float | None:
    return args.tol if args.tol is not None else _env_tol()


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _gamma_from_args(args) -> Fraction:
    given = [
        name
        for name, value in (
            ("--k", args.k),
            ("--gamma", args.gamma),
            ("--delta-sq", args.delta_sq),
            ("--a/--b", args.a if args.a is not None or args.b is not None else None),
        )
        if value is not None
    ]
    if len(given) != 1:
        raise ValueError(
            "specify the spectral parameter exactly once: --k, --gamma, "
            "--delta-sq, or --a with --b"
        )
    if args.k is not None:
        if args.k < 2:
            raise ValueError("k must be at least 2")
        return Fraction(2 * args.k - 1)
    if args.gamma is not None:
        return parse_rational(args.gamma)
    if args.delta_sq is not None:
        return gamma_from_delta_sq(parse_rational(args.delta_sq)).gamma
    if args.a is None or args.b is None:
        raise ValueError("--a and --b must be given together")
    return gamma_from_inner_products(parse_rational(args.a), parse_rational(args.b)).gamma


def _cmd_certify(args) -> int:
    cfg = load_points(args.file)
    cert = certify_two_distance(cfg, _resolve_tol(args))
    _print_json(cert.as_dict(include_pairs=args.pairs))
    return 0


def _cmd_seidel(args) -> int:
    if args.check_seidel is not None:
        s = read_seidel(args.check_seidel)
        _print_json(
            {
                "valid": True,
                "order": s.order,
                "trace": 0,
                "trace_square": s.trace_square_exact(),
            }
        )
        return 0
    if args.file is None:
        raise ValueError("either --file or --check-seidel is required")
    cfg = load_points(args.file)
    if cfg.flavor == "euclidean":
        delta_sq = parse_rational(args.delta_sq) if args.delta_sq else None
        s, params = seidel_euclidean(distance_sq_matrix(cfg), delta_sq)
        payload = {
            "flavor": "euclidean",
            "order": s.order,
            "n": params.n,
            "h": params.h,
            "delta_sq": format_rational(params.delta_sq),
            "permutation": list(params.permutation),
        }
    else:
        cert = certify_two_distance(cfg, _resolve_tol(args))
        a, b = cert.values
        s = seidel_spherical(gram(cfg), a, b)
        payload = {
            "flavor": "spherical",
            "order": s.order,
            "n": cfg.n,
            "a": format_rational(a),
            "b": format_rational(b),
        }
    if args.out:
        write_matrix(s, args.out)
        payload["path"] = str(args.out)
    else:
        payload["matrix"] = matrix_to_text(s)
    _print_json(payload)
    return 0


def _cmd_spectrum(args) -> int:
    m = read_matrix(args.file)
    _print_json(spectrum_of(m, _resolve_tol(args)).as_dict())
    return 0


def _bound_dispatch(kind: str, d: int, gamma: Fraction):
    if kind == EUCLIDEAN:
        return bound_euclidean(d, gamma)
    if kind == SPHERICAL_POS:
        return bound_spherical_pos(d, gamma)
    return bound_spherical_neg(d, gamma)


def _cmd_bound(args) -> int:
    kind = _KIND_ALIASES[args.kind]
    gamma = _gamma_from_args(args)
    _print_json(_bound_dispatch(kind, args.d, gamma).as_dict())
    return 0


def _load_catalog(choice: str):
    if choice == "none":
        return None
    if choice == "bundled":
        return bundled_catalog()
    return catalog_load(choice)


def _table_spec(args) -> TableSpec:
    base = default_table_spec(args.kind)
    d_range = _parse_range(args.d) if args.d else base.d_range
    k_range = _parse_range(args.k) if args.k else base.k_range
    return TableSpec(args.kind, d_range, k_range)


def _diff_rows(table: Table) -> list[dict]:
    published = published_cells(table.kind)
    rows = []
    for d in table.d_values:
        for col in table.columns:
            computed = table.value(d, col)
            if (d, col) in published:
                printed = published[(d, col)]
                match = "yes" if computed == printed else "no"
            else:
                printed, match = None, ""
            rows.append(
                {
                    "table": table.kind,
                    "d": d,
                    "column": col,
                    "computed": computed,
                    "published": printed,
                    "match": match,
                }
            )
    return rows


def _render_diff(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    cells = [
        [
            str(r["d"]),
            r["column"],
            "" if r["computed"] is None else str(r["computed"]),
            "" if r["published"] is None else str(r["published"]),
            r["match"],
        ]
        for r in rows
    ]
    header = ["d", "column", "computed", "published", "match"]
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in cells)
        return "\n".join(lines) + "\n"
    widths = [max(len(h), *(len(row[i]) for row in cells)) for i, h in enumerate(header)]
    def fmt_row(row):
        return "| " + " | ".join(c.rjust(w) for c, w in zip(row, widths)) + " |"
    lines = [fmt_row(header), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines.extend(fmt_row(row) for row in cells)
    return "\n".join(lines) + "\n"


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_table(args) -> int:
    table = make_table(_table_spec(args), _load_catalog(args.catalog))
    if args.paper_diff:
        text = _render_diff(_diff_rows(table), args.format)
    elif args.format == "json":
        text = json.dumps(table.as_dict(), indent=2, sort_keys=True) + "\n"
    elif args.format == "md":
        text = table_to_markdown(table)
    else:
        text = table_to_csv(table)
    _emit(text, args.out)
    return 0


def _cmd_convert(args) -> int:
    m = read_matrix(args.file)
    tol = _resolve_tol(args) or DEFAULT_TOL
    if args.to == "lines":
        if args.a is None or args.b is None:
            from .configurations import gram_two_values

            a, b = gram_two_values(m)
        else:
            a, b = parse_rational(args.a), parse_rational(args.b)
        sys_ = spherical_to_equiangular(m, a, b)
        result = sys_.gram()
        payload = {
            "direction": "lines",
            "alpha": format_rational(sys_.alpha),
            "dim": sys_.dim,
            "n": sys_.n,
        }
    else:
        if args.a is None:
            raise ValueError("--a is required for --to spherical")
        diag_ints = all(v.denominator == 1 for row in m.rows for v in row)
        if diag_ints and all(m.entry(i, i) == 0 for i in range(m.order)):
            if args.alpha is None:
                raise ValueError("--alpha is required when the input is a Seidel matrix")
            seidel = SeidelMatrix.from_sym(m)
            alpha = parse_rational(args.alpha)
        else:
            # line-system Gram: unit diagonal, +-alpha off-diagonal
            magnitudes = {abs(v) for i, row in enumerate(m.rows) for j, v in enumerate(row) if i != j}
            if len(magnitudes) != 1:
                raise ValueError("Gram off-diagonal must have a single magnitude")
            alpha = magnitudes.pop()
            if args.alpha is not None and parse_rational(args.alpha) != alpha:
                raise ValueError(
                    f"--alpha {args.alpha} does not match the file's angle "
                    f"{format_rational(alpha)}"
                )
            seidel = SeidelMatrix(
                [
                    [0 if i == j else (1 if m.entry(i, j) > 0 else -1) for j in range(m.order)]
                    for i in range(m.order)
                ]
            )
        lines = seidel_to_lines(seidel, tol)
        result = equiangular_to_spherical(
            EquiangularSystem(seidel, alpha, lines.dim), parse_rational(args.a)
        )
        report = psd_rank(result, tol)
        if not report.is_psd:
            raise ValueError(
                "resulting Gram is not PSD; the given angle does not match "
                "the matrix's smallest eigenvalue"
            )
        payload = {
            "direction": "spherical",
            "a": args.a,
            "alpha": format_rational(alpha),
            "n": result.order,
            "rank": report.numeric_rank,
        }
    if args.out:
        write_matrix(result, args.out)
        payload["path"] = str(args.out)
    else:
        payload["matrix"] = matrix_to_text(result)
    _print_json(payload)
    return 0


def _cmd_etf_check(args) -> int:
    s = read_seidel(args.file)
    _print_json(etf_signature_test(s, _resolve_tol(args)).as_dict())
    return 0


def _cmd_refine(args) -> int:
    catalog = _load_catalog(args.catalog)
    if args.d is not None:
        kind = _KIND_ALIASES[args.kind]
        gamma = _gamma_from_args(args)
        if kind == EUCLIDEAN:
            res = refine_euclidean(args.d, gamma, catalog)
        elif kind == SPHERICAL_POS:
            res = refine_spherical(args.d, gamma, catalog, branch="pos")
        else:
            res = refine_spherical(args.d, gamma, catalog, branch="neg")
        _print_json(res.as_dict())
        return 0
    spec = default_table_spec(args.table)
    table = make_table(spec, catalog)
    _emit(_render_diff(_diff_rows(table), args.format), args.out)
    return 0


def _cmd_selftest(args) -> int:
    return run_selftest(verbose=True)


def _add_tol(parser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="absolute tolerance override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twodist",
        description="Spectral bounds and Seidel-matrix machinery for two-distance sets",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("certify", help="certify a point-set file as two-distance")
    p.add_argument("--file", required=True)
    p.add_argument("--pairs", action="store_true", help="include per-pair labels")
    _add_tol(p)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("seidel", help="build a Seidel matrix, or validate one")
    p.add_argument("--file", help="point-set JSON to build from")
    p.add_argument("--delta-sq", help="expected squared distance ratio p/q")
    p.add_argument("--out", help="matrix file to write")
    p.add_argument("--check-seidel", metavar="FILE", help="validate a Seidel matrix file")
    _add_tol(p)
    p.set_defaults(handler=_cmd_seidel)

    p = sub.add_parser("spectrum", help="clustered spectrum of a matrix file")
    p.add_argument("--file", required=True)
    _add_tol(p)
    p.set_defaults(handler=_cmd_spectrum)

    for verb, helptext in (
        ("bound", "evaluate one cardinality bound"),
        ("refine", "apply ETF-catalog refinements"),
    ):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("--kind", choices=sorted(_KIND_ALIASES), default="euclidean")
        p.add_argument("--d", type=int, default=None, required=(verb == "bound"))
        p.add_argument("--k", type=int, default=None, help="gamma = 2k - 1")
        p.add_argument("--gamma", default=None, help="gamma as p/q")
        p.add_argument("--delta-sq", default=None, help="squared distance ratio p/q")
        p.add_argument("--a", default=None, help="smaller inner product p/q")
        p.add_argument("--b", default=None, help="larger inner product p/q")
        if verb == "refine":
            p.add_argument("--table", choices=("table2", "table3", "table4"), default="table4")
            p.add_argument("--catalog", default="bundled", help="PATH, 'bundled', or 'none'")
            p.add_argument("--format", choices=("csv", "md", "json"), default="csv")
            p.add_argument("--out")
            p.set_defaults(handler=_cmd_refine)
        else:
            p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("table", help="regenerate a bound table")
    p.add_argument("--kind", choices=("table2", "table3", "table4"), required=True)
    p.add_argument("--d", help="dimension range lo..hi")
    p.add_argument("--k", help="k range lo..hi (gamma = 2k - 1)")
    p.add_argument("--format", choices=("csv", "md", "json"), default="csv")
    p.add_argument("--out")
    p.add_argument("--paper-diff", action="store_true",
                   help="emit computed values beside the published ones")
    p.add_argument("--catalog", default="none", help="PATH, 'bundled', or 'none'")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("convert", help="convert between Gram and line-system matrices")
    p.add_argument("--file", required=True)
    p.add_argument("--to", choices=("lines", "spherical"), required=True)
    p.add_argument("--a", help="smaller inner product p/q")
    p.add_argument("--b", help="larger inner product p/q")
    p.add_argument("--alpha", help="common angle p/q")
    p.add_argument("--out")
    _add_tol(p)
    p.set_defaults(handler=_cmd_convert)

    p = sub.add_parser("etf-check", help="two-eigenvalue signature test on a Seidel file")
    p.add_argument("--file", required=True)
    _add_tol(p)
    p.set_defaults(handler=_cmd_etf_check)

    p = sub.add_parser("selftest", help="run the built-in oracle checks")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError, ZeroDivisionError, KeyError) as exc:
        _print_json({"error": type(exc).__name__, "detail": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
