import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from curvata.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


@pytest.fixture
def graph237(tmp_path):
    p = tmp_path / "t.graph"
    p.write_text("a b 2\nb c 3\na c 7\n")
    return str(p)


def test_analyze_237(graph237, capsys):
    code, rep, _ = run(["artin", "analyze", graph237], capsys)
    assert code == 0 and rep["result"]["prime_labels"] == {"a-b": 2, "b-c": 3, "a-c": 6}
    assert rep["command"] == "artin analyze" and rep["version"]


def test_validate_heavy_triangle(tmp_path, capsys):
    p = tmp_path / "x.complex"
    p.write_text("default_length 1/2\nsimplex a b c\n")
    code, rep, _ = run(["complex", "validate", str(p)], capsys)
    assert code == 1 and rep["violations"] and "sum" in rep["violations"][0]


def test_girth(capsys):
    code, rep, _ = run(["dihedral", "girth", "--m", "3", "--radius", "4"], capsys)
    assert code == 0 and rep["result"]["shortest_cycle"] == 6 and rep["result"]["pass"] is True


def test_girth_infinite(capsys):
    code, rep, _ = run(["dihedral", "girth", "--m", "inf", "--radius", "3"], capsys)
    assert code == 0 and rep["result"]["shortest_cycle"] is None


def test_ball_emit_round_trips(tmp_path, capsys):
    out = tmp_path / "ball.complex"
    code, rep, _ = run(["dihedral", "ball", "--m", "3", "--radius", "4", "--emit", str(out)], capsys)
    assert code == 0 and out.read_text().startswith("default_length 1/3")
    code, rep, _ = run(["complex", "large", str(out)], capsys)
    assert code == 0 and rep["result"]["large"] is True


def test_conjstab(tmp_path, capsys):
    p = tmp_path / "p.graph"
    p.write_text("a b 3\nb c 3\n")
    code, rep, _ = run(["artin", "conjstab", str(p), "--subset", "a,c"], capsys)
    assert code == 1 and rep["result"]["witness"] == ["a", "c"]
    code, rep, _ = run(["artin", "conjstab", str(p), "--subset", "a,b"], capsys)
    assert code == 0 and rep["result"]["stable"] is True


def test_curvature_rationals_are_strings(tmp_path, capsys):
    p = tmp_path / "t.complex"
    p.write_text("default_length 1/3\nsimplex a b c\n")
    code, rep, out = run(["curvature", str(p)], capsys)
    assert code == 0 and rep["result"]["residual"] == "0/1" and "0.3" not in out


def test_diagram_reduce_emits_checkable_diagram(tmp_path, capsys):
    d = tmp_path / "cone.diagram"
    d.write_text("[disk]\nsimplex c 1 2\nsimplex c 2 3\nsimplex c 3 1\n[target]\ndefault_length 1/3\n"
                 "simplex x 1 2 3\n[map]\nmap c x\nmap 1 1\nmap 2 2\nmap 3 3\ncycle 1 2 3\n")
    out = tmp_path / "reduced.diagram"
    code, rep, _ = run(["diagram", "reduce", str(d), "--emit", str(out)], capsys)
    assert code == 0 and rep["result"]["triangles_after"] == 1
    code, rep, _ = run(["diagram", "check", str(out)], capsys)
    assert code == 0 and rep["result"]["ok"] is True


@pytest.mark.parametrize("argv", [
    ["complex", "validate", "/nonexistent/file"],
    ["dihedral", "girth", "--m", "1", "--radius", "3"],
    ["dihedral", "girth", "--m", "4", "--radius", "2"],
    ["frobnicate"],
])
def test_bad_input_exit_2_with_json(argv, capsys):
    code, rep, _ = run(argv, capsys)
    assert code == 2 and rep["error"]["type"] and rep["result"] is None


def test_parse_error_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.graph"
    p.write_text("a b 3\na b 4\n")
    code, rep, _ = run(["artin", "analyze", str(p)], capsys)
    assert code == 2 and rep["error"]["type"] == "ConflictingLabel"


def test_byte_identical_across_processes(graph237):
    cmd = [sys.executable, "-m", "curvata", "artin", "analyze", graph237]
    outs = {subprocess.run(cmd, capture_output=True, text=True, check=False).stdout for _ in range(2)}
    assert len(outs) == 1
    cmd = [sys.executable, "-m", "curvata", "dihedral", "girth", "--m", "4", "--radius", "5"]
    outs = {subprocess.run(cmd, capture_output=True, text=True, check=False).stdout for _ in range(2)}
    assert len(outs) == 1


class TestCorpus:
    def test_empty(self, tmp_path, capsys):
        code, rep, _ = run(["corpus", str(tmp_path)], capsys)
        assert code == 0 and rep["result"]["total"] == 0 and rep["result"]["passed"] == 0

    def test_shipped_corpus_passes(self, capsys):
        code, rep, _ = run(["corpus", str(CORPUS)], capsys)
        assert code == 0 and rep["result"]["failed"] == 0 and rep["result"]["total"] >= 3

    def test_three_graphs(self, tmp_path, capsys):
        for p in CORPUS.glob("*.graph*"):
            shutil.copy(p, tmp_path)
        code, rep, _ = run(["corpus", str(tmp_path)], capsys)
        assert code == 0 and rep["result"]["passed"] == 3

    def test_stale_expectation(self, tmp_path, capsys):
        for p in CORPUS.glob("*.graph*"):
            shutil.copy(p, tmp_path)
        side = tmp_path / "two_five.graph.expect.json"
        exp = json.loads(side.read_text())
        exp["result"]["prime_labels"]["b-c"] = 5
        side.write_text(json.dumps(exp))
        code, rep, _ = run(["corpus", str(tmp_path)], capsys)
        assert code == 1 and rep["result"]["failed"] == 1
        assert [f["file"] for f in rep["result"]["files"] if not f["pass"]] == ["two_five.graph"]

    def test_missing_expectation(self, tmp_path, capsys):
        (tmp_path / "lonely.graph").write_text("a b 3\n")
        code, rep, _ = run(["corpus", str(tmp_path)], capsys)
        assert code == 2 and rep["error"]["type"] == "MissingExpectation"
