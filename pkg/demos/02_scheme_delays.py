"""Processing delay of centralized vs distributed decisions as N grows.

Run:  python demos/02_scheme_delays.py
"""
import numpy as np

from vho import VOICE, CandidateNetwork, DelayParams, QosVector, Technology, run_cvhd, run_dvhd, run_tdvhd
from vho.trust import TrustState

rng = np.random.default_rng(0)
required = QosVector(bandwidth=1000, delay=50, jitter=10, cost=3)
delays = DelayParams()  # 10 ms per message each way, 5 ms per NQV, 1 ms to select

print(" N  C-VHD  D-VHD   (ms)")
for n in range(1, 9):
    nets = [CandidateNetwork(f"n{i}", Technology.WIFI, QosVector(*rng.uniform([500, 20, 2, 1], [3000, 90, 20, 6])))
            for i in range(n)]
    cv = run_cvhd(nets, required, VOICE, "saw", delays)
    dv = run_dvhd(nets, required, VOICE, "saw", delays)
    print(f"{n:2d} {cv.processing_delay:6.0f} {dv.processing_delay:6.0f}")

# The trusted variant walks the ranked list past networks it does not trust.
favourite = run_dvhd(nets, required, VOICE, "saw").selected
trust = TrustState({favourite: 0.1})  # everyone else starts at the neutral 0.5
outcome, ranked = run_tdvhd(nets, required, VOICE, "saw", delays, trust)
print("\nranked:", ranked)
print("T-DVHD skips", ranked[0], "and picks", outcome.selected, f"({outcome.processing_delay:.0f} ms)")
