import json
import subprocess
import sys
from pathlib import Path

import pytest

from vho.cli import main
from vho.sim import bundled_path

D_CSV = bundled_path("paper_D.csv")
SCORES = bundled_path("paper_scores.json")
FIG2 = bundled_path("fig2.json")


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def run_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


class TestDecide:
    def test_paper_d_saw(self, capsys):
        report = run_json(capsys, "decide", "--matrix", str(D_CSV), "--method", "saw", "--format", "json")
        assert report["methods"]["saw"]["winner"] == "A4"
        assert list(report["methods"]) == ["saw"]

    def test_published_scores_replay(self, capsys):
        report = run_json(capsys, "decide", "--scores", str(SCORES), "--method", "both", "--format", "json")
        saw, wpm = report["methods"]["saw"], report["methods"]["wpm"]
        assert saw["order"] == ["A4", "A2", "A1", "A6", "A5", "A3"]
        assert wpm["order"] == ["A2", "A4", "A1", "A6", "A5", "A3"]
        assert saw["rsd"] == pytest.approx(12.64, abs=0.02)
        assert wpm["rsd"] == pytest.approx(35.75, abs=0.05)
        assert report["rsd_winner"] == "wpm"

    def test_table_output(self, capsys, monkeypatch):
        monkeypatch.setenv("VHO_COLOR", "0")
        assert main(["decide", "--matrix", str(D_CSV)]) == 0
        out = capsys.readouterr().out
        assert "ranking: A4 > A2 > A1 > A6" in out
        assert "\033[" not in out

    def test_json_round_trip(self, capsys):
        assert main(["decide", "--matrix", str(D_CSV), "--format", "json"]) == 0
        out = capsys.readouterr().out.strip()
        assert json.dumps(json.loads(out), indent=2, sort_keys=True) == out

    def test_bad_weights_exit_3(self, tmp_path, capsys):
        p = write(tmp_path, "m.csv", "a,b,c\nbenefit,cost,benefit\n0.3,0.3,0.3\nA1,1,2,3\n")
        assert main(["decide", "--matrix", str(p)]) == 3
        assert "0.9" in capsys.readouterr().err

    def test_negative_weight_exit_3(self, tmp_path):
        p = write(tmp_path, "m.csv", "a,b\nbenefit,cost\n1.5,-0.5\nA1,1,2\n")
        assert main(["decide", "--matrix", str(p)]) == 3

    @pytest.mark.parametrize("text,line", [
        ("a,b\nbenefit,sideways\n0.5,0.5\nA1,1,2\n", 2),
        ("a,b\nbenefit,cost\n0.5,0.5\nA1,1\n", 4),
        ("# comment\na,b\nbenefit,cost\n0.5,0.5\nA1,1,2\nA2,x,2\n", 6),
        ("a,b\nbenefit,cost\n0.5,0.5\nA1,1,0\n", 4),
        ("a,b\nbenefit,cost\n0.5,half\nA1,1,2\n", 3),
    ])
    def test_malformed_exit_2_with_line(self, tmp_path, capsys, text, line):
        p = write(tmp_path, "m.csv", text)
        assert main(["decide", "--matrix", str(p)]) == 2
        assert f"line {line}" in capsys.readouterr().err

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["decide", "--matrix", str(tmp_path / "nope.csv")]) == 2

    def test_case_insensitive_directions(self, tmp_path, capsys):
        p = write(tmp_path, "m.csv", "a,b\nBenefit,COST\n0.5,0.5\nA1,1,2\nA2,2,1\n")
        report = run_json(capsys, "decide", "--matrix", str(p), "--format", "json")
        assert report["methods"]["saw"]["winner"] == "A2"


class TestSimulate:
    def test_fig2(self, tmp_path, capsys):
        out = tmp_path / "trace.jsonl"
        summary = run_json(capsys, "simulate", "--scenario", str(FIG2), "--out", str(out))
        events = [json.loads(line) for line in out.read_text().splitlines()]
        assert any(e["kind"] == "Connected" for e in events)
        assert summary["handovers"] >= 1

    def test_deterministic_files(self, tmp_path, capsys):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        assert main(["simulate", "--scenario", str(FIG2), "--out", str(a)]) == 0
        assert main(["simulate", "--scenario", str(FIG2), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bad_tick_exit_4(self, tmp_path, capsys):
        doc = json.loads(FIG2.read_text())
        doc["tick"] = 0
        p = write(tmp_path, "s.json", json.dumps(doc))
        assert main(["simulate", "--scenario", str(p), "--out", str(tmp_path / "t")]) == 4
        assert "tick" in capsys.readouterr().err

    def test_bad_json_exit_2(self, tmp_path):
        p = write(tmp_path, "s.json", "{ not json")
        assert main(["simulate", "--scenario", str(p), "--out", str(tmp_path / "t")]) == 2

    def test_missing_key_exit_2(self, tmp_path):
        doc = json.loads(FIG2.read_text())
        del doc["mobile"]
        p = write(tmp_path, "s.json", json.dumps(doc))
        assert main(["simulate", "--scenario", str(p), "--out", str(tmp_path / "t")]) == 2


class TestCompare:
    def test_fig2(self, capsys):
        report = run_json(capsys, "compare", "--scenario", str(FIG2), "--format", "json")
        runs = {(r["scheme"], r["method"]): r for r in report["runs"]}
        assert len(runs) == 6
        for method in ("saw", "wpm"):
            assert runs["dvhd", method]["mean_delay_ms"] < runs["cvhd", method]["mean_delay_ms"]
            assert runs["tdvhd", method]["selected"] == runs["dvhd", method]["selected"]

    def test_single_cell(self, tmp_path, capsys):
        doc = json.loads(FIG2.read_text())
        doc["cells"] = doc["cells"][:1]
        doc["mobile"]["waypoints"] = [[0, 0], [300, 0]]
        p = write(tmp_path, "s.json", json.dumps(doc))
        report = run_json(capsys, "compare", "--scenario", str(p), "--format", "json")
        assert all(r["handovers"] == 0 for r in report["runs"])

    def test_table(self, capsys):
        assert main(["compare", "--scenario", str(FIG2)]) == 0
        assert "tdvhd" in capsys.readouterr().out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vho.cli", "decide", "--matrix", str(D_CSV), "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["methods"]["saw"]["winner"] == "A4"


@pytest.mark.parametrize("script", sorted((Path(__file__).parents[1] / "demos").glob("*.py")), ids=lambda p: p.name)
def test_demo_scripts_run(script):
    proc = subprocess.run([sys.executable, str(script)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
