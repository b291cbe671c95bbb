"""Level-of-trust bookkeeping for the trusted distributed scheme."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping, Sequence

from .selection import QosVector


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


@dataclass(frozen=True)
class TrustState:
    """Immutable per-network trust levels plus gate and update parameters."""

    lot: Mapping[str, float] = field(default_factory=dict)
    threshold: float = 0.5
    delta_plus: float = 0.05
    delta_minus: float = 0.1
    default_lot: float = 0.5

    def __post_init__(self):
        for name in ("threshold", "default_lot"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        for name in ("delta_plus", "delta_minus"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        lot = dict(self.lot)
        for k, v in lot.items():
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"LoT for {k} must lie in [0, 1], got {v}")
        object.__setattr__(self, "lot", MappingProxyType(lot))

    def level(self, network: str) -> float:
        return self.lot.get(network, self.default_lot)

    def passes(self, network: str) -> bool:
        return self.level(network) >= self.threshold

    def with_level(self, network: str, value: float) -> "TrustState":
        lot = dict(self.lot)
        lot[network] = _clamp01(value)
        return replace(self, lot=lot)


@dataclass(frozen=True)
class GateResult:
    """Outcome of walking the ranked list; ``network`` is None when blocked."""

    network: str | None
    tested: int

    @property
    def blocked(self) -> bool:
        return self.network is None


def lot_gate(ranked: Sequence[str], state: TrustState) -> GateResult:
    """Connect to the first ranked network whose LoT reaches the threshold."""
    if not ranked:
        raise ValueError("ranked list is empty")
    for i, net in enumerate(ranked, start=1):
        if state.passes(net):
            return GateResult(net, i)
    return GateResult(None, len(ranked))


def trust_update(state: TrustState, network: str, offered_observed: QosVector,
                 required: QosVector) -> TrustState:
    """Lower trust by delta_minus if any requirement was missed, else raise by delta_plus."""
    old = state.level(network)
    if offered_observed.violates(required):
        return state.with_level(network, old - state.delta_minus)
    return state.with_level(network, old + state.delta_plus)
