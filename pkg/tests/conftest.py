import numpy as np
import pytest

from vho.madm import DecisionMatrix, Direction
from vho.sim import bundled_path

W_VOICE = (0.3, 0.2, 0.2, 0.3)
ALTS = ("A1", "A2", "A3", "A4", "A5", "A6")

# Printed in the worked example; these are the normalized values.
PAPER_D = np.array([
    [0.984, 0.533, 0.667, 0.438],
    [1.0, 0.1, 0.75, 0.812],
    [0.984, 1.0, 0.5, 0.061],
    [1.0, 0.467, 1.0, 1.0],
    [0.984, 0.733, 0.6, 0.119],
    [0.968, 0.667, 0.667, 0.263],
])
# Printed as D'; these are the raw values.
PAPER_DPRIME = np.array([
    [0.00062, 8, 9, 0.411],
    [0.00063, 1.5, 8, 0.762],
    [0.00062, 15, 12, 0.057],
    [0.00063, 7, 6, 0.939],
    [0.00062, 11, 10, 0.103],
    [0.00061, 1, 9, 0.247],
])
PUBLISHED_SAW = [0.664, 0.714, 0.563, 0.793, 0.595, 0.635]
PUBLISHED_WPM = [0.73, 0.89, 0.32, 0.88, 0.47, 0.57]


@pytest.fixture
def matrix_d():
    return DecisionMatrix.from_rows(PAPER_D, ["benefit"] * 4)


@pytest.fixture
def matrix_dprime():
    return DecisionMatrix.from_rows(PAPER_DPRIME, ["benefit", "benefit", "cost", "benefit"])


@pytest.fixture
def fig2_path():
    return bundled_path("fig2.json")


def random_matrix(rng, n=None, m=None, directions=None):
    n = n or int(rng.integers(1, 9))
    m = m or int(rng.integers(1, 7))
    vals = np.exp(rng.uniform(np.log(0.01), np.log(100), size=(n, m)))
    if directions is None:
        directions = [Direction.BENEFIT if b else Direction.COST for b in rng.integers(0, 2, size=m)]
    return DecisionMatrix.from_rows(vals, directions)


def random_weights(rng, m, strictly_positive=False):
    w = rng.uniform(0.05 if strictly_positive else 0.0, 1.0, size=m)
    w = w / w.sum()
    w[-1] = 1.0 - w[:-1].sum()
    return w


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
