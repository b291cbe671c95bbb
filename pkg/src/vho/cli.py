"""Command-line entry point.

Exit codes: 0 success, 2 unreadable or malformed input, 3 invalid weights,
4 scenario invariant violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .madm import MADMError, NegativeWeight, SumNotOne, method_result, normalize, saw_scores, wpm_ratios
from .matrixfile import MatrixFileError, read_matrix, read_scores
from .schemes import Scheme
from .selection import Method
from .sim import EventKind, ScenarioError, ScenarioInvalid, load_scenario, run, write_trace

EXIT_OK, EXIT_PARSE, EXIT_WEIGHTS, EXIT_SCENARIO = 0, 2, 3, 4


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _color() -> bool:
    return os.environ.get("VHO_COLOR", "1") != "0" and sys.stdout.isatty()


def _bold(text: str) -> str:
    return f"\033[1m{text}\033[0m" if _color() else text


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- decide -------------------------------------------------------------------

def decide_report(matrix_path=None, scores_path=None, method: str = "both") -> dict:
    methods = ["saw", "wpm"] if method == "both" else [method]
    if scores_path is not None:
        try:
            vectors = read_scores(scores_path)
        except (OSError, ValueError, KeyError) as exc:
            raise CliFailure(EXIT_PARSE, f"{scores_path}: {exc}") from None
        source = str(scores_path)
    else:
        try:
            mf = read_matrix(matrix_path)
        except OSError as exc:
            raise CliFailure(EXIT_PARSE, str(exc)) from None
        except MatrixFileError as exc:
            raise CliFailure(EXIT_PARSE, f"{matrix_path}: {exc}") from None
        except (NegativeWeight, SumNotOne) as exc:
            raise CliFailure(EXIT_WEIGHTS, f"{matrix_path}: {exc}") from None
        vectors = {}
        if "saw" in methods:
            vectors["saw"] = saw_scores(normalize(mf.matrix), mf.weights)
        if "wpm" in methods:
            vectors["wpm"] = wpm_ratios(mf.matrix, mf.weights)
        source = str(matrix_path)
    results = {m: method_result(m, vectors[m]).to_dict() for m in methods if m in vectors}
    report = {"source": source, "methods": results}
    if len(results) == 2 and all(r["rsd"] is not None for r in results.values()):
        report["rsd_winner"] = max(results, key=lambda m: results[m]["rsd"])
    return report


def _format_decide(report: dict) -> str:
    lines = [f"source: {report['source']}"]
    for name, r in report["methods"].items():
        lines.append("")
        lines.append(f"[{name.upper()}]")
        for alt, s in r["scores"].items():
            lines.append(f"  {alt:<12} {s:.4f}")
        lines.append("  ranking: " + " > ".join(r["order"]))
        lines.append("  winner:  " + _bold(r["winner"]))
        rsd_txt = f"{r['rsd']:.2f}%" if r["rsd"] is not None else f"undefined ({r['rsd_error']})"
        lines.append(f"  RSD:     {rsd_txt}")
    if "rsd_winner" in report:
        lines.append("")
        lines.append("more discriminating method (larger RSD): " + _bold(report["rsd_winner"].upper()))
    return "\n".join(lines)


# -- simulate / compare -------------------------------------------------------

def _load(path):
    try:
        return load_scenario(path)
    except OSError as exc:
        raise CliFailure(EXIT_PARSE, str(exc)) from None
    except ScenarioInvalid as exc:
        raise CliFailure(EXIT_SCENARIO, f"{path}: invalid scenario field '{exc.field}': {exc}") from None
    except ScenarioError as exc:
        raise CliFailure(EXIT_PARSE, f"{path}: {exc}") from None


def compare_report(scenario) -> dict:
    """Run the scenario under every scheme and method."""
    rows = []
    for scheme in Scheme:
        for method in Method:
            trace, summary = run(scenario.replace(scheme=scheme, method=method))
            selected = [e.payload["network"] for e in trace if e.kind is EventKind.CONNECTED]
            rsds = [e.payload["rsd"] for e in trace
                    if e.kind is EventKind.DECISION_MADE and e.payload["rsd"] is not None]
            rows.append({
                "scheme": scheme.value,
                "method": method.value,
                "selected": selected,
                "handovers": summary["handovers"],
                "blocked": summary["blocked"],
                "decisions": summary["decisions"],
                "mean_delay_ms": summary["mean_delay_ms"],
                "mean_rsd": float(np.mean(rsds)) if rsds else None,
            })
    return {"runs": rows}


def _format_compare(report: dict) -> str:
    head = f"{'scheme':<7} {'method':<6} {'handovers':>9} {'blocked':>7} {'mean delay':>11} {'mean RSD':>9}  selected"
    lines = [head, "-" * len(head)]
    for r in report["runs"]:
        rsd_txt = f"{r['mean_rsd']:.2f}%" if r["mean_rsd"] is not None else "-"
        lines.append(f"{r['scheme']:<7} {r['method']:<6} {r['handovers']:>9} {r['blocked']:>7} "
                     f"{r['mean_delay_ms']:>8.2f} ms {rsd_txt:>9}  {' -> '.join(r['selected']) or '-'}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vho", description="Vertical handover decision toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="rank alternatives of a decision-matrix file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", type=Path)
    src.add_argument("--scores", type=Path, help="JSON file with precomputed saw/wpm score vectors")
    p.add_argument("--method", choices=["saw", "wpm", "both"], default="both")
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("simulate", help="run a scenario and write its JSON-lines trace")
    p.add_argument("--scenario", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("compare", help="run a scenario under every scheme and method")
    p.add_argument("--scenario", type=Path, required=True)
    p.add_argument("--format", choices=["table", "json"], default="table")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "decide":
            report = decide_report(args.matrix, args.scores, args.method)
            print(_dump(report) if args.format == "json" else _format_decide(report))
        elif args.command == "simulate":
            scenario = _load(args.scenario)
            trace, summary = run(scenario)
            write_trace(trace, args.out)
            print(_dump(summary))
        else:
            report = compare_report(_load(args.scenario))
            print(_dump(report) if args.format == "json" else _format_compare(report))
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except MADMError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
