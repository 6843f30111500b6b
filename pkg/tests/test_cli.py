"""Command-line parsing, result documents and exit codes."""

import json
import subprocess
import sys

import pytest

import curves as C
from curvearith import cli, gonality
from curvearith.curve import places_up_to

KLEIN = {"model": "plane", "p": 2, "k": 1, "F": [{"e": [3, 1, 0], "c": [1]}, {"e": [0, 3, 1], "c": [1]}, {"e": [1, 0, 3], "c": [1]}]}
E5 = {"model": "hyperelliptic", "p": 5, "k": 1, "h": [[0]], "f": [[1], [1], [0], [1]]}
H7 = {"model": "hyperelliptic", "p": 7, "k": 1, "h": [[0]], "f": [[1], [0], [0], [0], [0], [1]]}


@pytest.fixture
def spec_file(tmp_path):
    def write(spec, name="curve.json"):
        path = tmp_path / name
        path.write_text(spec if isinstance(spec, str) else json.dumps(spec))
        return str(path)

    return write


def run(*argv):
    doc, code, _ = cli.run(list(argv))
    return doc, code


def test_parse_examples(spec_file):
    assert cli.parse_curve_file(spec_file(H7)) == C.h7()
    assert cli.parse_curve_file(spec_file(KLEIN)) == C.klein()


def test_parse_round_trip(spec_file):
    for X in C.expansion_curves().values():
        assert cli.parse_curve_file(spec_file(X.to_spec())) == X


def test_malformed_json_reports_position(spec_file):
    doc, code = run("zeta", spec_file('{"model": "plane",\n "p": 2,, }'))
    assert code == 2 and doc["status"] == "input_error"
    assert (doc["error"]["line"], doc["error"]["column"]) == (2, 9)


def test_singular_model_names_factor(spec_file):
    bad = dict(H7, f=[[1], [2], [1], [0], [0], [1]])
    doc, code = run("zeta", spec_file(bad))
    assert code == 2 and "repeated factor x + 4" in doc["error"]["message"]


def test_missing_file():
    doc, code = run("zeta", "/nonexistent/curve.json")
    assert code == 2


def test_spec_examples(spec_file):
    doc, code = run("gonality", spec_file(KLEIN), "--strategy", "both")
    assert code == 0 and doc["answer"]["gonality"] == 3
    doc, code = run("classgroup", spec_file(E5))
    assert code == 0 and doc["answer"]["rank"] == 1 and doc["answer"]["torsion"] == [9]
    doc, code = run("zeta", spec_file(E5))
    assert doc["answer"]["h0"] == 9 and doc["answer"]["point_counts"] == [9]
    assert set(doc) >= {"command", "curve_hash", "seed", "status", "answer", "statistics", "version"}


def test_has_function_and_rrdim(spec_file):
    path = spec_file(H7)
    doc, code = run("has-function", path, "--degree", "2")
    assert code == 0 and doc["answer"]["has_function"] is True
    doc, code = run("rrdim", path, "--point", "0,1", "--point", "0,6", "--basis", "infinity", "--n", "5", "--strategy", "both")
    assert doc["answer"]["dimension"] == 2 and doc["answer"]["rank"] == 2
    label = places_up_to(C.h7(), 2)[-1].label()
    doc, code = run("rrdim", path, "--place", f"{label}=1")
    assert code == 0 and doc["answer"]["dimension"] == 0
    doc, code = run("has-function", path)
    assert code == 2


def test_expand(spec_file):
    doc, code = run("expand", spec_file(H7), "--point", "0,1", "--basis", "infinity", "--n", "5", "--precision", "2")
    assert code == 0 and doc["answer"]["rows"] == [[[1], [0]], [[0], [1]], [[0], [0]], [[1], [0]]]
    doc, code = run("expand", spec_file(H7), "--point", "3,3")
    assert code == 2  # not a point of the curve


def test_timeout_exit_code(spec_file):
    doc, code = run("has-function", spec_file(KLEIN), "--degree", "3", "--strategy", "baseline", "--timeout", "0")
    assert code == 3 and doc["status"] == "timeout" and "partial" in doc["statistics"]


def test_mismatch_exit_code(spec_file, monkeypatch):
    monkeypatch.setattr(gonality, "baseline_decision", lambda omega, D, d: True)
    doc, code = run("has-function", spec_file(KLEIN), "--degree", "2", "--strategy", "both")
    assert code == 4 and doc["status"] == "mismatch" and doc["error"]["divisor"]


def test_answers_are_deterministic(spec_file, tmp_path):
    path = spec_file(KLEIN)
    dumps = []
    for k in range(2):
        out = tmp_path / f"out{k}.json"
        rel = tmp_path / f"rel{k}.json"
        assert cli.main(["classgroup", path, "--seed", "11", "--output", str(out), "--dump-relations", str(rel)]) == 0
        doc = json.loads(out.read_text())
        dumps.append((json.dumps(doc["answer"], sort_keys=True), rel.read_text()))
    assert dumps[0] == dumps[1]
    relations = json.loads(dumps[0][1])
    assert relations["relations"] and relations["audit"]["passed"]


def test_bench_reports_both_strategies(spec_file):
    doc, code = run("bench", spec_file(KLEIN), "--degree", "3", "--sample", "5")
    assert code == 0
    stats = doc["statistics"]
    assert stats["amortized"]["poly_ops_during_scan"] == 0
    assert {row["strategy"] for row in stats["table"]} == {"amortized", "baseline"}


def test_console_entry_point(spec_file):
    proc = subprocess.run(
        [sys.executable, "-m", "curvearith", "zeta", spec_file(E5)], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["answer"]["h0"] == 9
