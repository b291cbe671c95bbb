"""Walk a VoIP terminal from a WiMax cell into a WiFi hotspot.

Run:  python demos/03_handover_simulation.py
"""
from vho.schemes import Scheme
from vho.selection import Method
from vho.sim import EventKind, fig2_scenario, run

scenario = fig2_scenario()
for c in scenario.cells:
    print(f"{c.id:8s} {c.network.technology.value:6s} center={c.center} r={c.radius:.0f} m  offered={c.network.offered}")

trace, summary = run(scenario)
for e in trace:
    if e.kind is not EventKind.TRUST_UPDATED:
        print(f"t={e.time:6.1f}s  x={e.position[0]:7.1f}  {e.kind.value:18s} {e.payload}")
print(summary)

# Same walk under every scheme and method.
for scheme in Scheme:
    for method in Method:
        _, m = run(scenario.replace(scheme=scheme, method=method))
        print(f"{scheme.value:6s} {method.value}: handovers={m['handovers']} mean delay={m['mean_delay_ms']:.1f} ms")

# Trust drains on the WiMax cell (its 60 ms delay misses the 50 ms budget).
lots = [e.payload["lot"] for e in trace if e.kind is EventKind.TRUST_UPDATED and e.payload["network"] == "wimax-1"]
print("wimax-1 LoT, first ticks:", lots[:8])
