"""Centralized, distributed and trusted-distributed handover decisions.

Each runner scores the candidates, picks a network and charges a processing
delay according to where the scoring runs:

* C-VHD: the terminal exchanges one request/response with each of the N
  candidates in turn and scores all of them itself,
  ``N*(t_uplink + t_downlink) + N*t_calc_mt + t_select``.
* D-VHD: every candidate scores itself against the requirement, in parallel,
  ``t_uplink + t_calc_vn + t_downlink + t_select``.
* T-DVHD: D-VHD plus ``t_select`` for each trust-gate step past the first.

All three send 2N messages.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .selection import (
    CandidateNetwork,
    EmptyCandidateSet,
    QosVector,
    WeightProfile,
    global_nqv,
    reference_nqv,
    select_best,
)
from .trust import TrustState, lot_gate


class Scheme(enum.Enum):
    CVHD = "cvhd"
    DVHD = "dvhd"
    TDVHD = "tdvhd"

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower().replace("-", ""))


@dataclass(frozen=True)
class DelayParams:
    """Per-step costs in milliseconds."""

    t_uplink: float = 10.0
    t_downlink: float = 10.0
    t_calc_mt: float = 5.0
    t_calc_vn: float = 5.0
    t_select: float = 1.0

    def __post_init__(self):
        for name, v in vars(self).items():
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be a finite non-negative number, got {v}")


@dataclass(frozen=True)
class DecisionOutcome:
    scheme: Scheme
    selected: str | None
    processing_delay: float
    messages: int
    per_network_scores: tuple[tuple[str, float], ...]

    @property
    def blocked(self) -> bool:
        return self.selected is None

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "selected": self.selected,
            "blocked": self.blocked,
            "processing_delay_ms": self.processing_delay,
            "messages": self.messages,
            "scores": [[i, s] for i, s in self.per_network_scores],
        }


def _require(candidates):
    if not candidates:
        raise EmptyCandidateSet("no candidate networks")


def run_cvhd(candidates: Sequence[CandidateNetwork], required: QosVector,
             profile: WeightProfile, method, delays: DelayParams = DelayParams()) -> DecisionOutcome:
    _require(candidates)
    n = len(candidates)
    scores = global_nqv(candidates, profile, method)
    scored = tuple((c.id, float(s)) for c, s in zip(candidates, scores.scores))
    delay = n * (delays.t_uplink + delays.t_downlink) + n * delays.t_calc_mt + delays.t_select
    return DecisionOutcome(Scheme.CVHD, select_best(scored), delay, 2 * n, scored)


def _distributed_scores(candidates, required, profile, method):
    return tuple((c.id, reference_nqv(c, required, profile, method)) for c in candidates)


def _dvhd_delay(delays: DelayParams) -> float:
    return delays.t_uplink + delays.t_calc_vn + delays.t_downlink + delays.t_select


def run_dvhd(candidates: Sequence[CandidateNetwork], required: QosVector,
             profile: WeightProfile, method, delays: DelayParams = DelayParams()) -> DecisionOutcome:
    _require(candidates)
    scored = _distributed_scores(candidates, required, profile, method)
    return DecisionOutcome(Scheme.DVHD, select_best(scored), _dvhd_delay(delays),
                           2 * len(candidates), scored)


def rank_scored(scored: Sequence[tuple[str, float]]) -> list[str]:
    """Ids ordered best first, ties in input order."""
    order = sorted(range(len(scored)), key=lambda i: -scored[i][1])
    return [scored[i][0] for i in order]


def run_tdvhd(candidates: Sequence[CandidateNetwork], required: QosVector,
              profile: WeightProfile, method, delays: DelayParams = DelayParams(),
              trust: TrustState = TrustState()) -> tuple[DecisionOutcome, list[str]]:
    """D-VHD scoring followed by the trust gate. ``trust`` is only read."""
    _require(candidates)
    scored = _distributed_scores(candidates, required, profile, method)
    ranked = rank_scored(scored)
    gate = lot_gate(ranked, trust)
    delay = _dvhd_delay(delays) + (gate.tested - 1) * delays.t_select
    outcome = DecisionOutcome(Scheme.TDVHD, gate.network, delay, 2 * len(candidates), scored)
    return outcome, ranked


def run_scheme(scheme, candidates, required, profile, method, delays=DelayParams(),
               trust: TrustState | None = None) -> DecisionOutcome:
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.CVHD:
        return run_cvhd(candidates, required, profile, method, delays)
    if scheme is Scheme.DVHD:
        return run_dvhd(candidates, required, profile, method, delays)
    return run_tdvhd(candidates, required, profile, method, delays, trust or TrustState())[0]
