"""Reader for comma-separated decision-matrix files.

Layout, ignoring blank lines and ``#`` comments::

    X1,X2,X3,X4                 criterion names
    benefit,benefit,cost,benefit
    0.3,0.2,0.2,0.3             weights
    A1,0.984,0.533,0.667,0.438  one row per alternative
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .madm import DecisionMatrix, MADMError, ScoreVector, validate_weights
from .madm import CriterionSpec, Direction


class MatrixFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class MatrixFile:
    matrix: DecisionMatrix
    weights: np.ndarray


def _rows(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, [cell.strip() for cell in next(csv.reader(io.StringIO(stripped)))]


def _floats(cells, lineno, what):
    try:
        return [float(c) for c in cells]
    except ValueError:
        raise MatrixFileError(lineno, f"{what} must be numbers, got {cells}") from None


def parse_matrix(text: str) -> MatrixFile:
    """Parse matrix-file text.

    Structural problems raise MatrixFileError (with the 1-based line number);
    an invalid weight vector raises the madm weight error unchanged.
    """
    rows = list(_rows(text))
    if len(rows) < 4:
        raise MatrixFileError(rows[-1][0] if rows else 1,
                              "expected names, directions, weights and at least one alternative")
    (ln_names, names), (ln_dirs, dirs), (ln_w, wcells) = rows[:3]
    m = len(names)
    if any(not n for n in names):
        raise MatrixFileError(ln_names, "empty criterion name")
    if len(dirs) != m:
        raise MatrixFileError(ln_dirs, f"{len(dirs)} directions for {m} criteria")
    try:
        directions = [Direction.parse(d) for d in dirs]
    except ValueError as exc:
        raise MatrixFileError(ln_dirs, str(exc)) from None
    if len(wcells) != m:
        raise MatrixFileError(ln_w, f"{len(wcells)} weights for {m} criteria")
    weights = validate_weights(_floats(wcells, ln_w, "weights"))

    alternatives, values = [], []
    for lineno, cells in rows[3:]:
        if len(cells) != m + 1:
            raise MatrixFileError(lineno, f"expected identifier plus {m} values, got {len(cells)} fields")
        row = _floats(cells[1:], lineno, "values")
        if not all(np.isfinite(v) and v > 0 for v in row):
            raise MatrixFileError(lineno, f"values must be finite and strictly positive, got {row}")
        if cells[0] in alternatives:
            raise MatrixFileError(lineno, f"duplicate alternative {cells[0]!r}")
        alternatives.append(cells[0])
        values.append(row)
    try:
        matrix = DecisionMatrix(tuple(CriterionSpec(n, d) for n, d in zip(names, directions)),
                                tuple(alternatives), values)
    except (ValueError, MADMError) as exc:
        raise MatrixFileError(ln_names, str(exc)) from None
    return MatrixFile(matrix, weights)


def read_matrix(path) -> MatrixFile:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def read_scores(path) -> dict[str, ScoreVector]:
    """Load published score vectors keyed by method (``saw``, ``wpm``)."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    alts = doc["alternatives"]
    return {k: ScoreVector(alts, doc[k]) for k in ("saw", "wpm") if k in doc}
