"""Multi-attribute decision making core: SAW and WPM scoring.

Everything here is a pure function over immutable values. Matrices hold
strictly positive entries so that cost normalization (division by the entry)
and the weighted product (real powers) are always defined.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

WEIGHT_SUM_TOL = 1e-9


class MADMError(ValueError):
    """Base class for decision-matrix and scoring errors."""


class NegativeWeight(MADMError):
    def __init__(self, index: int, value: float):
        super().__init__(f"weight {index} is negative ({value})")
        self.index = index
        self.value = value


class SumNotOne(MADMError):
    def __init__(self, total: float):
        super().__init__(f"weights sum to {total:.12g}, expected 1")
        self.total = total


class DimensionMismatch(MADMError):
    pass


class NonPositiveValue(MADMError):
    pass


class TooFewScores(MADMError):
    pass


class ZeroMean(MADMError):
    pass


class Direction(enum.Enum):
    BENEFIT = "benefit"
    COST = "cost"

    @classmethod
    def parse(cls, token: str) -> "Direction":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"direction must be 'benefit' or 'cost', got {token!r}") from None


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    direction: Direction = Direction.BENEFIT

    def __post_init__(self):
        if not self.name:
            raise ValueError("criterion name must be non-empty")


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DecisionMatrix:
    """Alternatives (rows) scored on criteria (columns).

    ``values`` is stored as a read-only float array of shape (n, m).
    """

    criteria: tuple[CriterionSpec, ...]
    alternatives: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "alternatives", tuple(str(a) for a in self.alternatives))
        vals = _frozen(self.values)
        if vals.ndim != 2:
            raise DimensionMismatch(f"values must be 2-D, got shape {vals.shape}")
        n, m = vals.shape
        if n < 1 or m < 1:
            raise DimensionMismatch("matrix needs at least one alternative and one criterion")
        if len(self.criteria) != m:
            raise DimensionMismatch(f"{len(self.criteria)} criteria for {m} columns")
        if len(self.alternatives) != n:
            raise DimensionMismatch(f"{len(self.alternatives)} alternatives for {n} rows")
        names = [c.name for c in self.criteria]
        if len(set(names)) != len(names):
            raise ValueError(f"criterion names must be unique: {names}")
        if len(set(self.alternatives)) != n:
            raise ValueError(f"alternative identifiers must be unique: {self.alternatives}")
        if not np.all(np.isfinite(vals)):
            raise NonPositiveValue("matrix values must be finite")
        if np.any(vals <= 0):
            i, j = np.argwhere(vals <= 0)[0]
            raise NonPositiveValue(
                f"value for ({self.alternatives[i]}, {self.criteria[j].name}) is {vals[i, j]}; "
                "all values must be strictly positive"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_rows(cls, rows, directions: Sequence[Direction | str] | None = None,
                  names: Sequence[str] | None = None,
                  alternatives: Sequence[str] | None = None) -> "DecisionMatrix":
        vals = np.asarray(rows, dtype=float)
        n, m = vals.shape
        names = list(names) if names is not None else [f"X{j + 1}" for j in range(m)]
        if directions is None:
            directions = [Direction.BENEFIT] * m
        dirs = [d if isinstance(d, Direction) else Direction.parse(d) for d in directions]
        alternatives = list(alternatives) if alternatives is not None else [f"A{i + 1}" for i in range(n)]
        return cls(tuple(CriterionSpec(nm, d) for nm, d in zip(names, dirs)), tuple(alternatives), vals)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def directions(self) -> tuple[Direction, ...]:
        return tuple(c.direction for c in self.criteria)

    def benefit_mask(self) -> np.ndarray:
        return np.array([c.direction is Direction.BENEFIT for c in self.criteria])

    def scale_column(self, j: int, factor: float) -> "DecisionMatrix":
        vals = self.values.copy()
        vals[:, j] *= factor
        return DecisionMatrix(self.criteria, self.alternatives, vals)


@dataclass(frozen=True, eq=False)
class ScoreVector:
    alternatives: tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        scores = _frozen(self.scores)
        if scores.shape != (len(self.alternatives),):
            raise DimensionMismatch(
                f"{scores.shape} scores for {len(self.alternatives)} alternatives"
            )
        object.__setattr__(self, "scores", scores)

    def __len__(self):
        return len(self.alternatives)

    def as_dict(self) -> dict[str, float]:
        return {a: float(s) for a, s in zip(self.alternatives, self.scores)}


@dataclass(frozen=True)
class Ranking:
    order: tuple[str, ...]
    scores: ScoreVector

    @property
    def winner(self) -> str:
        return self.order[0]


def validate_weights(weights) -> np.ndarray:
    """Check a weight vector and return it as a read-only array.

    Raises NegativeWeight or SumNotOne; SumNotOne carries the offending sum
    in ``.total``.
    """
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size < 1:
        raise DimensionMismatch("weight vector is empty")
    if not np.all(np.isfinite(w)):
        raise MADMError("weights must be finite")
    neg = np.flatnonzero(w < 0)
    if neg.size:
        raise NegativeWeight(int(neg[0]), float(w[neg[0]]))
    total = math.fsum(w)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise SumNotOne(total)
    return _frozen(w)


def _check_weights_for(matrix_cols: int, weights) -> np.ndarray:
    w = validate_weights(weights)
    if w.size != matrix_cols:
        raise DimensionMismatch(f"{w.size} weights for {matrix_cols} criteria")
    return w


def normalize(matrix: DecisionMatrix) -> DecisionMatrix:
    """Column-wise max normalization; cost columns are inverted as min/x.

    The result is all-benefit with every entry in (0, 1].
    """
    x = matrix.values
    benefit = matrix.benefit_mask()
    out = np.where(benefit, x / x.max(axis=0), x.min(axis=0) / x)
    criteria = tuple(CriterionSpec(c.name, Direction.BENEFIT) for c in matrix.criteria)
    return DecisionMatrix(criteria, matrix.alternatives, out)


def saw_scores(normalized: DecisionMatrix, weights) -> ScoreVector:
    """Weighted sum of an already normalized matrix."""
    w = _check_weights_for(normalized.shape[1], weights)
    if not normalized.benefit_mask().all():
        raise MADMError("saw_scores expects a normalized (all-benefit) matrix")
    return ScoreVector(normalized.alternatives, normalized.values @ w)


def _signed_exponents(weights: np.ndarray, specs: Sequence[CriterionSpec]) -> np.ndarray:
    sign = np.array([1.0 if s.direction is Direction.BENEFIT else -1.0 for s in specs])
    return sign * weights


def wpm_value(row, weights, specs: Sequence[CriterionSpec]) -> float:
    """Weighted product of one row: benefit factors get +w, cost factors -w.

    Evaluated as exp of a weighted log-sum so long products of small factors
    do not underflow.
    """
    x = np.asarray(row, dtype=float).reshape(-1)
    w = validate_weights(weights)
    if not (x.size == w.size == len(specs)):
        raise DimensionMismatch(f"row of {x.size}, {w.size} weights, {len(specs)} criteria")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise NonPositiveValue(f"weighted product needs strictly positive values, got {x.tolist()}")
    return float(np.exp(np.dot(_signed_exponents(w, specs), np.log(x))))


def ideal_alternative(matrix: DecisionMatrix) -> np.ndarray:
    """Best value per column: max for benefit, min for cost."""
    x = matrix.values
    return np.where(matrix.benefit_mask(), x.max(axis=0), x.min(axis=0))


def wpm_ratios(matrix: DecisionMatrix, weights) -> ScoreVector:
    """Ratio of each row's weighted product to that of the positive ideal."""
    w = _check_weights_for(matrix.shape[1], weights)
    expo = _signed_exponents(w, matrix.criteria)
    ideal = ideal_alternative(matrix)
    # Per-entry log differences: a row equal to the ideal gives exactly 0.
    log_ratio = (np.log(matrix.values) - np.log(ideal)) @ expo
    ratios = np.minimum(np.exp(log_ratio), 1.0)
    return ScoreVector(matrix.alternatives, ratios)


def rank(scores: ScoreVector) -> Ranking:
    """Sort alternatives by score, best first; ties keep list order."""
    s = np.asarray(scores.scores)
    if not np.all(np.isfinite(s)):
        raise MADMError("cannot rank non-finite scores")
    idx = sorted(range(len(s)), key=lambda i: -s[i])
    return Ranking(tuple(scores.alternatives[i] for i in idx), scores)


def rsd(scores) -> float:
    """Relative standard deviation in percent (sample std, n-1 divisor)."""
    s = np.asarray(getattr(scores, "scores", scores), dtype=float).reshape(-1)
    if s.size < 2:
        raise TooFewScores(f"RSD needs at least 2 scores, got {s.size}")
    mean = s.mean()
    if mean == 0:
        raise ZeroMean("RSD undefined for zero mean")
    return float(s.std(ddof=1) / mean * 100.0)


@dataclass(frozen=True)
class MethodResult:
    method: str
    ranking: Ranking
    rsd: float | None
    rsd_error: str | None = None

    @property
    def winner(self) -> str:
        return self.ranking.winner

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "scores": self.ranking.scores.as_dict(),
            "order": list(self.ranking.order),
            "winner": self.winner,
            "rsd": self.rsd,
            "rsd_error": self.rsd_error,
        }


@dataclass(frozen=True)
class Comparison:
    saw: MethodResult
    wpm: MethodResult
    discriminating: str | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "saw": self.saw.to_dict(),
            "wpm": self.wpm.to_dict(),
            "discriminating": self.discriminating,
        }


def method_result(method: str, scores: ScoreVector) -> MethodResult:
    ranking = rank(scores)
    try:
        return MethodResult(method, ranking, rsd(scores))
    except (TooFewScores, ZeroMean) as exc:
        return MethodResult(method, ranking, None, type(exc).__name__)


def compare_methods(matrix: DecisionMatrix, weights) -> Comparison:
    """Run SAW and WPM side by side; the larger RSD names the more discriminating method."""
    saw = method_result("saw", saw_scores(normalize(matrix), weights))
    wpm = method_result("wpm", wpm_ratios(matrix, weights))
    winner = None
    if saw.rsd is not None and wpm.rsd is not None:
        winner = "wpm" if wpm.rsd > saw.rsd else "saw"
    return Comparison(saw, wpm, winner)
