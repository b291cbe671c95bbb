"""SAW vs WPM on the six-network worked example.

Run:  python demos/01_worked_example.py
"""
import numpy as np

from vho import compare_methods, normalize, rank, rsd
from vho.matrixfile import read_matrix, read_scores
from vho.sim import bundled_path

np.set_printoptions(precision=4, suppress=True)

# The raw matrix (delay, bandwidth, cost, jitter for A1..A6). Only cost is a
# cost criterion; delay and jitter were already inverted.
raw = read_matrix(bundled_path("paper_Dprime.csv"))
print("raw matrix:\n", raw.matrix.values)

# Max normalization turns it into the printed normalized matrix (up to two typos).
print("normalized:\n", normalize(raw.matrix).values)

# Score the normalized matrix with the voice weights [0.3 0.2 0.2 0.3].
d = read_matrix(bundled_path("paper_D.csv"))
report = compare_methods(d.matrix, d.weights)
for result in (report.saw, report.wpm):
    print(f"\n{result.method.upper()} scores:", result.ranking.scores.as_dict())
    print("  order :", " > ".join(result.ranking.order))
    print(f"  RSD   : {result.rsd:.2f}%")

# Replaying the published score vectors gives the published table and RSDs.
published = read_scores(bundled_path("paper_scores.json"))
for name, scores in published.items():
    print(f"\npublished {name}: order {' '.join(rank(scores).order)}, RSD {rsd(scores):.2f}%")
