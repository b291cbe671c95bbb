"""Network selection function: QoS vectors to network quality values (NQV).

Criteria always appear in the order delay, bandwidth, cost, jitter so a
weight profile applies positionally.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .madm import (
    CriterionSpec,
    DecisionMatrix,
    Direction,
    ScoreVector,
    normalize,
    saw_scores,
    validate_weights,
    wpm_ratios,
)

CRITERIA = ("delay", "bandwidth", "cost", "jitter")
DIRECTIONS = (Direction.COST, Direction.BENEFIT, Direction.COST, Direction.COST)
RATIO_CAP = 2.0


class SelectionError(ValueError):
    pass


class EmptyCandidateSet(SelectionError):
    pass


class DuplicateId(SelectionError):
    pass


class Method(enum.Enum):
    SAW = "saw"
    WPM = "wpm"

    @classmethod
    def parse(cls, value) -> "Method":
        return value if isinstance(value, cls) else cls(str(value).lower())


class Technology(enum.Enum):
    WIFI = "wifi"
    WIMAX = "wimax"

    @classmethod
    def parse(cls, value) -> "Technology":
        return value if isinstance(value, cls) else cls(str(value).lower())


@dataclass(frozen=True)
class QosVector:
    """Bandwidth in kbps, delay and jitter in ms, cost in abstract units."""

    bandwidth: float
    delay: float
    jitter: float
    cost: float

    def __post_init__(self):
        for name in ("bandwidth", "delay", "jitter", "cost"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"QoS {name} must be a positive finite number, got {v!r}")

    def as_row(self) -> tuple[float, float, float, float]:
        """Values in criterion order (delay, bandwidth, cost, jitter)."""
        return (self.delay, self.bandwidth, self.cost, self.jitter)

    def violates(self, required: "QosVector") -> bool:
        """True if this delivered QoS misses any single requirement."""
        return (
            self.bandwidth < required.bandwidth
            or self.delay > required.delay
            or self.jitter > required.jitter
            or self.cost > required.cost
        )


@dataclass(frozen=True)
class WeightProfile:
    application_class: str
    weights: tuple[float, ...]

    def __post_init__(self):
        w = validate_weights(self.weights)
        if w.size != len(CRITERIA):
            raise ValueError(f"profile needs {len(CRITERIA)} weights {CRITERIA}, got {w.size}")
        object.__setattr__(self, "weights", tuple(float(x) for x in w))


VOICE = WeightProfile("voice", (0.3, 0.2, 0.2, 0.3))
PROFILES = {"voice": VOICE}


@dataclass(frozen=True)
class CandidateNetwork:
    id: str
    technology: Technology
    offered: QosVector


def build_matrix(candidates: Sequence[CandidateNetwork],
                 directions: Sequence[Direction] | None = None) -> DecisionMatrix:
    """One row per candidate, columns (delay, bandwidth, cost, jitter).

    ``directions`` overrides the default cost/benefit assignment, e.g. when
    the offered values are already normalized upstream.
    """
    if not candidates:
        raise EmptyCandidateSet("no candidate networks")
    ids = [c.id for c in candidates]
    if len(set(ids)) != len(ids):
        raise DuplicateId(f"duplicate candidate ids in {ids}")
    dirs = tuple(directions) if directions is not None else DIRECTIONS
    criteria = tuple(CriterionSpec(n, d) for n, d in zip(CRITERIA, dirs))
    return DecisionMatrix(criteria, tuple(ids), [c.offered.as_row() for c in candidates])


def global_nqv(candidates: Sequence[CandidateNetwork], profile: WeightProfile, method,
               directions: Sequence[Direction] | None = None) -> ScoreVector:
    """Score every candidate against its peers (needs the whole candidate set)."""
    matrix = build_matrix(candidates, directions)
    if Method.parse(method) is Method.SAW:
        return saw_scores(normalize(matrix), profile.weights)
    return wpm_ratios(matrix, profile.weights)


def reference_ratios(offered: QosVector, required: QosVector) -> np.ndarray:
    """Per-criterion satisfaction ratios, clamped to (0, 2]."""
    r = np.array([
        required.delay / offered.delay,
        offered.bandwidth / required.bandwidth,
        required.cost / offered.cost,
        required.jitter / offered.jitter,
    ])
    return np.minimum(r, RATIO_CAP)


def reference_nqv(candidate: CandidateNetwork, required: QosVector, profile: WeightProfile,
                  method) -> float:
    """Score one candidate against the requirement alone, independent of peers.

    Meeting every requirement exactly scores 0.5; a 2x surplus everywhere
    scores 1.0.
    """
    scaled = reference_ratios(candidate.offered, required) / RATIO_CAP
    w = np.asarray(profile.weights)
    if Method.parse(method) is Method.SAW:
        return float(scaled @ w)
    return float(np.exp(w @ np.log(scaled)))


def select_best(scored: Iterable[tuple[str, float]]) -> str:
    """Id with the highest NQV; the first one wins ties."""
    best_id, best = None, -math.inf
    for net_id, value in scored:
        if best_id is None or value > best:
            best_id, best = net_id, value
    if best_id is None:
        raise EmptyCandidateSet("nothing to select from")
    return best_id
