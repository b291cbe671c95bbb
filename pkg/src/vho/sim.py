"""Deterministic single-terminal handover simulator.

A mobile terminal walks a polyline of waypoints at constant speed. Cells are
closed disks; distance/radius stands in for signal quality. When the terminal
drifts past ``hysteresis * radius`` from its serving cell (or leaves it), the
configured scheme picks a network among the covering cells. While connected,
the serving network's delivered QoS is checked against the requirement once
per tick and its trust level updated.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .madm import MADMError, TooFewScores, ZeroMean, rsd
from .schemes import DecisionOutcome, DelayParams, Scheme, run_cvhd, run_dvhd, run_tdvhd
from .selection import (
    PROFILES,
    CandidateNetwork,
    Method,
    QosVector,
    Technology,
    WeightProfile,
)
from .trust import TrustState, trust_update


class ScenarioError(ValueError):
    """Malformed scenario document (missing keys, wrong types, bad JSON)."""


class ScenarioInvalid(ValueError):
    """Scenario parsed but violates an invariant; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class EventKind(enum.Enum):
    COVERAGE_CHANGE = "CoverageChange"
    HANDOVER_TRIGGERED = "HandoverTriggered"
    DECISION_MADE = "DecisionMade"
    CONNECTED = "Connected"
    HANDOVER_BLOCKED = "HandoverBlocked"
    TRUST_UPDATED = "TrustUpdated"
    NO_COVERAGE = "NoCoverage"


@dataclass(frozen=True)
class Cell:
    network: CandidateNetwork
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ScenarioInvalid("radius", f"cell {self.network.id} radius must be > 0")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @property
    def id(self) -> str:
        return self.network.id

    def distance(self, position) -> float:
        return math.hypot(position[0] - self.center[0], position[1] - self.center[1])

    def covers(self, position) -> bool:
        return self.distance(position) <= self.radius


@dataclass(frozen=True)
class Scenario:
    cells: tuple[Cell, ...]
    mt_required: QosVector
    profile: WeightProfile
    waypoints: tuple[tuple[float, float], ...]
    speed: float
    tick: float = 1.0
    scheme: Scheme = Scheme.DVHD
    method: Method = Method.SAW
    delays: DelayParams = field(default_factory=DelayParams)
    trust: TrustState = field(default_factory=TrustState)
    hysteresis: float = 0.9
    seed: int = 0
    qos_noise: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "waypoints", tuple((float(x), float(y)) for x, y in self.waypoints))
        if len(self.cells) < 1:
            raise ScenarioInvalid("cells", "at least one cell is required")
        ids = [c.id for c in self.cells]
        if len(set(ids)) != len(ids):
            raise ScenarioInvalid("cells", f"duplicate cell ids {ids}")
        if len(self.waypoints) < 2:
            raise ScenarioInvalid("waypoints", "at least two waypoints are required")
        if not (math.isfinite(self.tick) and self.tick > 0):
            raise ScenarioInvalid("tick", f"must be > 0, got {self.tick}")
        if not (math.isfinite(self.speed) and self.speed > 0):
            raise ScenarioInvalid("speed_mps", f"must be > 0, got {self.speed}")
        if not 0 < self.hysteresis <= 1:
            raise ScenarioInvalid("hysteresis", f"must lie in (0, 1], got {self.hysteresis}")
        if not 0 <= self.qos_noise < 1:
            raise ScenarioInvalid("qos_noise", f"must lie in [0, 1), got {self.qos_noise}")

    def cell(self, cell_id: str) -> Cell:
        for c in self.cells:
            if c.id == cell_id:
                return c
        raise KeyError(cell_id)

    def replace(self, **changes) -> "Scenario":
        from dataclasses import replace
        return replace(self, **changes)


@dataclass(frozen=True)
class TraceEvent:
    time: float
    kind: EventKind
    position: tuple[float, float]
    payload: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "time": round(self.time, 3),
            "kind": self.kind.value,
            "position": [round(self.position[0], 6), round(self.position[1], 6)],
            "payload": self.payload,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def coverage_at(cells: Sequence[Cell], position) -> list[str]:
    """Ids of cells whose closed disk contains ``position``, in scenario order."""
    return [c.id for c in cells if c.covers(position)]


def should_trigger(serving: Cell, position, hysteresis: float) -> bool:
    return not serving.covers(position) or serving.distance(position) / serving.radius > hysteresis


def trajectory_positions(waypoints, speed: float, tick: float) -> list[tuple[float, tuple[float, float]]]:
    """Sample (time, position) every tick along the polyline, ending exactly at the last waypoint."""
    pts = np.asarray(waypoints, dtype=float)
    seg = np.hypot(*np.diff(pts, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    duration = total / speed
    steps = math.ceil(duration / tick - 1e-9)
    out = []
    for k in range(steps + 1):
        t = min(k * tick, duration)
        s = t * speed
        i = min(int(np.searchsorted(cum, s, side="right")) - 1, len(seg) - 1)
        i = max(i, 0)
        frac = 0.0 if seg[i] == 0 else (s - cum[i]) / seg[i]
        p = pts[i] + frac * (pts[i + 1] - pts[i])
        out.append((t, (float(p[0]), float(p[1]))))
    return out


def _decision_rsd(outcome: DecisionOutcome) -> float | None:
    try:
        return rsd([s for _, s in outcome.per_network_scores])
    except (TooFewScores, ZeroMean):
        return None


class _Run:
    def __init__(self, scenario: Scenario):
        self.sc = scenario
        self.trace: list[TraceEvent] = []
        self.trust = scenario.trust
        self.serving: str | None = None
        self.rng = np.random.default_rng(scenario.seed)

    def emit(self, t, kind, pos, **payload):
        self.trace.append(TraceEvent(t, kind, pos, payload))

    def decide(self, candidates: list[str]) -> DecisionOutcome:
        sc = self.sc
        nets = [sc.cell(c).network for c in candidates]
        if sc.scheme is Scheme.CVHD:
            return run_cvhd(nets, sc.mt_required, sc.profile, sc.method, sc.delays)
        if sc.scheme is Scheme.DVHD:
            return run_dvhd(nets, sc.mt_required, sc.profile, sc.method, sc.delays)
        return run_tdvhd(nets, sc.mt_required, sc.profile, sc.method, sc.delays, self.trust)[0]

    def attempt(self, t, pos, covering: list[str]):
        out = self.decide(covering)
        payload = out.to_dict()
        payload["rsd"] = _decision_rsd(out)
        self.emit(t, EventKind.DECISION_MADE, pos, **payload)
        if out.blocked:
            self.emit(t, EventKind.HANDOVER_BLOCKED, pos, candidates=covering, serving=self.serving)
            if self.serving is not None and self.serving not in covering:
                self.serving = None
                self.emit(t, EventKind.NO_COVERAGE, pos, covering=covering, reason="blocked")
            return
        if out.selected != self.serving:
            self.emit(t, EventKind.CONNECTED, pos, network=out.selected, previous=self.serving)
            self.serving = out.selected

    def observed_qos(self, cell: Cell) -> QosVector:
        q = cell.network.offered
        if self.sc.qos_noise == 0:
            return q
        f = 1.0 + self.sc.qos_noise * self.rng.uniform(-1.0, 1.0, size=4)
        return QosVector(*(float(v * k) for v, k in zip((q.bandwidth, q.delay, q.jitter, q.cost), f)))

    def run(self) -> list[TraceEvent]:
        sc = self.sc
        prev_cov: list[str] | None = None
        was_triggered = False
        cov_at_decision: list[str] | None = None
        for t, pos in trajectory_positions(sc.waypoints, sc.speed, sc.tick):
            covering = coverage_at(sc.cells, pos)
            if covering != prev_cov:
                self.emit(t, EventKind.COVERAGE_CHANGE, pos, covering=covering)
                if not covering:
                    self.emit(t, EventKind.NO_COVERAGE, pos, covering=covering, reason="outside")
                    self.serving = None
            coverage_changed = covering != prev_cov
            prev_cov = covering

            if self.serving is None:
                # Initial attach, or re-attach after an outage: no trigger event.
                if covering and (coverage_changed or cov_at_decision != covering):
                    cov_at_decision = covering
                    self.attempt(t, pos, covering)
                was_triggered = False
            else:
                cell = sc.cell(self.serving)
                triggered = should_trigger(cell, pos, sc.hysteresis)
                if triggered and (not was_triggered or covering != cov_at_decision):
                    self.emit(t, EventKind.HANDOVER_TRIGGERED, pos, serving=self.serving,
                              covering=covering,
                              normalized_distance=round(cell.distance(pos) / cell.radius, 6))
                    cov_at_decision = covering
                    if covering:
                        self.attempt(t, pos, covering)
                was_triggered = triggered

            if self.serving is not None:
                cell = sc.cell(self.serving)
                before = self.trust.level(self.serving)
                observed = self.observed_qos(cell)
                self.trust = trust_update(self.trust, self.serving, observed, sc.mt_required)
                self.emit(t, EventKind.TRUST_UPDATED, pos, network=self.serving,
                          lot_before=round(before, 12),
                          lot=round(self.trust.level(self.serving), 12),
                          violated=observed.violates(sc.mt_required))
        return self.trace


def run(scenario: Scenario) -> tuple[list[TraceEvent], dict]:
    trace = _Run(scenario).run()
    return trace, metrics(trace)


def metrics(trace: Sequence[TraceEvent]) -> dict:
    """Summary counts and processing-delay statistics of a trace."""
    delays = [e.payload["processing_delay_ms"] for e in trace if e.kind is EventKind.DECISION_MADE]
    connections: dict[str, int] = {}
    handovers = blocked = triggers = 0
    for e in trace:
        if e.kind is EventKind.CONNECTED:
            net = e.payload["network"]
            connections[net] = connections.get(net, 0) + 1
            if e.payload.get("previous") is not None:
                handovers += 1
        elif e.kind is EventKind.HANDOVER_BLOCKED:
            blocked += 1
        elif e.kind is EventKind.HANDOVER_TRIGGERED:
            triggers += 1
    return {
        "handovers": handovers,
        "blocked": blocked,
        "triggers": triggers,
        "decisions": len(delays),
        "mean_delay_ms": float(np.mean(delays)) if delays else 0.0,
        "max_delay_ms": float(max(delays)) if delays else 0.0,
        "connections": dict(sorted(connections.items())),
        "total_time_s": round(trace[-1].time, 3) if trace else 0.0,
    }


def trace_to_jsonl(trace: Sequence[TraceEvent]) -> str:
    return "".join(e.to_json() + "\n" for e in trace)


def write_trace(trace: Sequence[TraceEvent], path) -> None:
    Path(path).write_text(trace_to_jsonl(trace), encoding="utf-8")


def read_trace(path) -> list[TraceEvent]:
    events = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            d = json.loads(line)
            events.append(TraceEvent(d["time"], EventKind(d["kind"]), tuple(d["position"]), d["payload"]))
    return events


# -- scenario documents -------------------------------------------------------

def _get(doc: dict, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ScenarioError(f"missing key '{key}' in {where}")
    return doc[key]


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{name} must be a number, got {value!r}")
    return float(value)


def _qos(doc: dict, where: str) -> QosVector:
    vals = {k: _number(_get(doc, k, where), f"{where}.{k}")
            for k in ("bandwidth_kbps", "delay_ms", "jitter_ms", "cost")}
    try:
        return QosVector(vals["bandwidth_kbps"], vals["delay_ms"], vals["jitter_ms"], vals["cost"])
    except ValueError as exc:
        raise ScenarioInvalid(where, str(exc)) from None


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a Scenario from a parsed scenario document.

    Raises ScenarioError for structural problems and ScenarioInvalid for
    values that break an invariant.
    """
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")
    cells = []
    for k, cd in enumerate(_get(doc, "cells", "scenario")):
        where = f"cells[{k}]"
        try:
            tech = Technology.parse(_get(cd, "technology", where))
        except ValueError:
            raise ScenarioInvalid(f"{where}.technology", f"unknown technology {cd['technology']!r}") from None
        center = _get(cd, "center", where)
        if not (isinstance(center, list) and len(center) == 2):
            raise ScenarioError(f"{where}.center must be [x, y]")
        net = CandidateNetwork(str(_get(cd, "id", where)), tech, _qos(_get(cd, "offered", where), f"{where}.offered"))
        radius = _number(_get(cd, "radius", where), f"{where}.radius")
        cells.append(Cell(net, (_number(center[0], "center"), _number(center[1], "center")), radius))

    mobile = _get(doc, "mobile", "scenario")
    decision = _get(doc, "decision", "scenario")
    app = str(mobile.get("application", "voice")).lower()
    weights = decision.get("weights")
    if weights is None:
        if app not in PROFILES:
            raise ScenarioInvalid("mobile.application", f"no built-in weights for {app!r}")
        weights = PROFILES[app].weights
    try:
        profile = WeightProfile(app, tuple(_number(w, "decision.weights") for w in weights))
    except (ValueError, MADMError) as exc:
        raise ScenarioInvalid("decision.weights", str(exc)) from None

    waypoints = _get(mobile, "waypoints", "mobile")
    if not isinstance(waypoints, list) or not all(isinstance(p, list) and len(p) == 2 for p in waypoints):
        raise ScenarioError("mobile.waypoints must be a list of [x, y]")

    try:
        scheme = Scheme.parse(decision.get("scheme", "dvhd"))
    except ValueError:
        raise ScenarioInvalid("decision.scheme", f"unknown scheme {decision.get('scheme')!r}") from None
    try:
        method = Method.parse(decision.get("method", "saw"))
    except ValueError:
        raise ScenarioInvalid("decision.method", f"unknown method {decision.get('method')!r}") from None

    dd = doc.get("delays", {})
    try:
        delays = DelayParams(**{name: _number(dd[key], f"delays.{key}")
                                for name, key in (("t_uplink", "t_uplink_ms"), ("t_downlink", "t_downlink_ms"),
                                                  ("t_calc_mt", "t_calc_mt_ms"), ("t_calc_vn", "t_calc_vn_ms"),
                                                  ("t_select", "t_select_ms")) if key in dd})
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioInvalid("delays", str(exc)) from None

    td = doc.get("trust", {})
    try:
        trust = TrustState(
            lot={str(k): _number(v, "trust.initial") for k, v in td.get("initial", {}).items()},
            **{k: _number(td[k], f"trust.{k}")
               for k in ("threshold", "delta_plus", "delta_minus", "default_lot") if k in td},
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioInvalid("trust", str(exc)) from None

    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ScenarioError(f"seed must be an integer, got {seed!r}")

    return Scenario(
        cells=tuple(cells),
        mt_required=_qos(_get(mobile, "required", "mobile"), "mobile.required"),
        profile=profile,
        waypoints=tuple((_number(x, "waypoint"), _number(y, "waypoint")) for x, y in waypoints),
        speed=_number(_get(mobile, "speed_mps", "mobile"), "mobile.speed_mps"),
        tick=_number(doc.get("tick", 1.0), "tick"),
        scheme=scheme,
        method=method,
        delays=delays,
        trust=trust,
        hysteresis=_number(decision.get("hysteresis", 0.9), "decision.hysteresis"),
        seed=seed,
        qos_noise=_number(doc.get("qos_noise", 0.0), "qos_noise"),
    )


def load_scenario(path) -> Scenario:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return scenario_from_dict(doc)


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("vho") / "data" / name))


def fig2_scenario() -> Scenario:
    """Two-cell overlap scenario: a large WiMax cell and a smaller WiFi cell at its edge."""
    return load_scenario(bundled_path("fig2.json"))
