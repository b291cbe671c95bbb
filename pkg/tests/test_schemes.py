import numpy as np
import pytest

from vho.schemes import DelayParams, Scheme, run_cvhd, run_dvhd, run_scheme, run_tdvhd
from vho.selection import VOICE, CandidateNetwork, EmptyCandidateSet, Method, QosVector, Technology
from vho.trust import TrustState

REQ = QosVector(bandwidth=1000, delay=50, jitter=10, cost=3)
ZERO = DelayParams(0, 0, 0, 0, 0)


def cands(n, rng=None):
    rng = rng or np.random.default_rng(0)
    return [CandidateNetwork(f"n{i}", Technology.WIFI if i % 2 else Technology.WIMAX,
                             QosVector(*rng.uniform([200, 10, 1, 0.5], [4000, 120, 30, 10])))
            for i in range(n)]


DOMINANT = [
    CandidateNetwork("weak", Technology.WIMAX, QosVector(800, 70, 14, 6)),
    CandidateNetwork("strong", Technology.WIFI, QosVector(1600, 30, 6, 2)),
    CandidateNetwork("mid", Technology.WIMAX, QosVector(1000, 50, 10, 3)),
]


class TestDelays:
    def test_cvhd_n4(self):
        out = run_cvhd(cands(4), REQ, VOICE, Method.SAW, DelayParams(10, 10, 5, 5, 1))
        assert out.processing_delay == 101 and out.messages == 8

    def test_dvhd_n4(self):
        out = run_dvhd(cands(4), REQ, VOICE, Method.SAW, DelayParams(10, 10, 5, 5, 1))
        assert out.processing_delay == 26 and out.messages == 8

    def test_zero_params(self):
        for runner in (run_cvhd, run_dvhd):
            out = runner(cands(1), REQ, VOICE, Method.SAW, ZERO)
            assert out.processing_delay == 0 and out.messages == 2

    def test_defaults(self):
        assert DelayParams() == DelayParams(10, 10, 5, 5, 1)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DelayParams(t_uplink=-1)

    def test_dvhd_faster_random(self):
        rng = np.random.default_rng(21)
        for _ in range(500):
            n = int(rng.integers(2, 9))
            up, down = rng.uniform(0.1, 50, size=2)
            mt = rng.uniform(0, 20)
            d = DelayParams(up, down, mt, rng.uniform(0, mt), rng.uniform(0, 5))
            c = cands(n, rng)
            assert run_dvhd(c, REQ, VOICE, "saw", d).processing_delay < run_cvhd(c, REQ, VOICE, "saw", d).processing_delay


class TestSelection:
    @pytest.mark.parametrize("method", list(Method))
    def test_dominant_selected(self, method):
        assert run_cvhd(DOMINANT, REQ, VOICE, method).selected == "strong"
        assert run_dvhd(DOMINANT, REQ, VOICE, method).selected == "strong"

    def test_empty(self):
        for runner in (run_cvhd, run_dvhd, run_tdvhd):
            with pytest.raises(EmptyCandidateSet):
                runner([], REQ, VOICE, Method.SAW)

    def test_dvhd_peer_independent(self):
        full = dict(run_dvhd(DOMINANT, REQ, VOICE, "wpm").per_network_scores)
        alone = dict(run_dvhd(DOMINANT[:1], REQ, VOICE, "wpm").per_network_scores)
        assert alone["weak"] == full["weak"]

    def test_deterministic(self):
        c = cands(5)
        for s in Scheme:
            assert run_scheme(s, c, REQ, VOICE, "saw") == run_scheme(s, c, REQ, VOICE, "saw")


class TestTdvhd:
    def test_all_passing_equals_dvhd(self):
        out, ranked = run_tdvhd(DOMINANT, REQ, VOICE, "saw", trust=TrustState(default_lot=1.0))
        dv = run_dvhd(DOMINANT, REQ, VOICE, "saw")
        assert out.selected == dv.selected == ranked[0]
        assert out.processing_delay == dv.processing_delay

    def test_second_choice(self):
        trust = TrustState({"strong": 0.1}, default_lot=0.9)
        out, ranked = run_tdvhd(DOMINANT, REQ, VOICE, "saw", DelayParams(), trust)
        assert ranked[0] == "strong"
        assert out.selected == ranked[1]
        assert out.processing_delay == 26 + 1

    def test_blocked(self):
        out, _ = run_tdvhd(DOMINANT, REQ, VOICE, "saw", trust=TrustState(default_lot=0.0))
        assert out.blocked and out.selected is None
        assert out.processing_delay == 26 + 2 * 1

    def test_trust_not_modified(self):
        trust = TrustState({"strong": 0.7})
        run_tdvhd(DOMINANT, REQ, VOICE, "saw", trust=trust)
        assert dict(trust.lot) == {"strong": 0.7}

    def test_random_all_passing(self):
        rng = np.random.default_rng(22)
        trust = TrustState(default_lot=0.9)
        for _ in range(100):
            c = cands(int(rng.integers(1, 8)), rng)
            for m in Method:
                assert run_tdvhd(c, REQ, VOICE, m, trust=trust)[0].selected == run_dvhd(c, REQ, VOICE, m).selected
