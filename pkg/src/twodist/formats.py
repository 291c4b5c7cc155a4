"""On-disk formats: matrix text files, float CSV export, point-set JSON.

The matrix text format is one line with the order followed by that many
whitespace-separated rows whose entries are integers or ``p/q`` rationals.
Point sets are JSON objects ``{flavor, dim, points}`` with coordinates as
rational strings; plain float point clouds can be imported from CSV and are
marked inexact.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

from .configurations import PointConfiguration
from .linalg import SymMatrix, format_rational
from .seidel import SeidelMatrix


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {text!r}: {exc}")


def matrix_to_text(m: SymMatrix | SeidelMatrix) -> str:
    lines = [str(m.order)]
    for row in m.rows:
        lines.append(" ".join(format_rational(Fraction(v)) for v in row))
    return "\n".join(lines) + "\n"


def write_matrix(m: SymMatrix | SeidelMatrix, path) -> None:
    Path(path).write_text(matrix_to_text(m), encoding="utf-8")


def read_matrix(path) -> SymMatrix:
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    try:
        order = int(lines[0].strip())
    except ValueError:
        raise ValueError(f"{path}: first line must be the order, got {lines[0]!r}")
    if len(lines) != order + 1:
        raise ValueError(f"{path}: expected {order} rows, found {len(lines) - 1}")
    rows = []
    for idx, line in enumerate(lines[1:], start=1):
        tokens = line.split()
        if len(tokens) != order:
            raise ValueError(f"{path}: row {idx} has {len(tokens)} entries, expected {order}")
        rows.append([parse_rational(tok) for tok in tokens])
    return SymMatrix(rows)


def read_seidel(path) -> SeidelMatrix:
    """Read and validate a Seidel matrix (zero diagonal, +-1 integers)."""
    return SeidelMatrix.from_sym(read_matrix(path))


def write_matrix_csv(m: SymMatrix | SeidelMatrix, path) -> None:
    """Float view of the matrix as headerless CSV."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for row in m.rows:
            writer.writerow([repr(float(v)) for v in row])


def points_to_json(cfg: PointConfiguration) -> dict:
    out = {
        "flavor": cfg.flavor,
        "dim": cfg.dim,
        "points": [[format_rational(c) for c in p] for p in cfg.points],
    }
    if not cfg.exact:
        out["exact"] = False
    return out


def save_points(cfg: PointConfiguration, path) -> None:
    Path(path).write_text(
        json.dumps(points_to_json(cfg), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_points(path) -> PointConfiguration:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    for key in ("flavor", "dim", "points"):
        if key not in data:
            raise ValueError(f"{path}: point-set JSON missing field {key!r}")
    points = [[parse_rational(str(c)) for c in p] for p in data["points"]]
    return PointConfiguration(
        points,
        data["flavor"],
        dim=int(data["dim"]),
        exact=bool(data.get("exact", True)),
    )


def load_points_csv(path, flavor: str = "euclidean") -> PointConfiguration:
    """Import a plain float point cloud (one point per row); marked inexact."""
    points = []
    with open(path, newline="", encoding="utf-8") as handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                points.append([float(cell) for cell in row])
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}")
    return PointConfiguration(points, flavor, exact=False)
