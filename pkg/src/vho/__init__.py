"""Vertical handover decisions for heterogeneous wireless networks.

SAW and WPM network scoring, centralized/distributed/trusted decision
schemes with a processing-delay model, and a small deterministic simulator.
"""

from .madm import (
    CriterionSpec,
    DecisionMatrix,
    Direction,
    Ranking,
    ScoreVector,
    compare_methods,
    ideal_alternative,
    normalize,
    rank,
    rsd,
    saw_scores,
    validate_weights,
    wpm_ratios,
    wpm_value,
)
from .schemes import DecisionOutcome, DelayParams, Scheme, run_cvhd, run_dvhd, run_tdvhd
from .selection import (
    VOICE,
    CandidateNetwork,
    Method,
    QosVector,
    Technology,
    WeightProfile,
    build_matrix,
    global_nqv,
    reference_nqv,
    select_best,
)
from .trust import GateResult, TrustState, lot_gate, trust_update

__version__ = "0.1.0"
