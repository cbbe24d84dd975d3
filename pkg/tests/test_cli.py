import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from signedwalks import (
    MINUS,
    SignatureOracle,
    build_section2_oracle,
    example_triangle,
    make_walk,
    rotate,
    rotations,
    sign_of_walk,
    sigma_of,
    concat,
    inverse,
)
from signedwalks.cli import run_command

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"
TRI = str(SCENARIOS / "triangle.json")


@pytest.fixture
def tri_file(tmp_path):
    dst = tmp_path / "tri.json"
    shutil.copy(TRI, dst)
    return str(dst)


def run_json(*argv):
    code, text = run_command([*argv, "--format", "json"])
    return code, json.loads(text)


def walk_of(graph, obj):
    return make_walk(graph, obj["start"], obj["edges"])


def test_check_section2(tri_file):
    code, text = run_command(["check", "--graph", tri_file, "--walkset", "section2", "--max-len", "6"])
    assert code == 1
    assert "rotation-closure: FAIL" in text
    assert "exclusive-3-walk: pass at bound factor_len=3" in text
    assert "W = (v0,e01,v1,e12,v2,e20,v0)" in text
    assert "R = (v1,e12,v2,e20,v0,e01,v1)" in text


def test_check_signature_passes(tri_file):
    code, text = run_command(["check", "--graph", tri_file])
    assert code == 0, text
    assert "bounds: max_len=6 factor_len=3 prefix_len=2 walk_bound=4" in text


def test_reconstruct(tri_file):
    code, data = run_json("reconstruct", "--graph", tri_file, "--walkset", "signature", "--verify-len", "6")
    assert code == 0
    assert data["verdict"] == "realizable-at-bound"
    assert data["signature"] == {"e01": "+", "e12": "-", "e20": "+"}


def test_reconstruct_section2(tri_file):
    code, data = run_json("reconstruct", "--graph", tri_file, "--walkset", "section2")
    assert code == 1
    assert data["verdict"] == "not-realizable"
    assert all(r["witness"] is not None for r in data["refutations"])


def test_members(tri_file):
    code, data = run_json("members", "--graph", tri_file, "--walkset", "section2", "--max-len", "3")
    assert code == 0 and len(data["members"]) == 4
    code, data = run_json("members", "--graph", tri_file, "--max-len", "3")
    assert len(data["members"]) == 6


def test_refute(tri_file):
    code, text = run_command(["refute", "--graph", tri_file, "--walkset", "section2"])
    assert code == 1 and "refuted: 8/8 signatures" in text
    code, text = run_command(["refute", "--graph", tri_file, "--walkset", "signature"])
    assert code == 0 and "refuted: 4/8 signatures" in text


def test_counterexample_builtin():
    code, text = run_command(["counterexample"])
    assert code == 0
    assert "reproduced: yes" in text and "refuted: 8/8 signatures" in text


def test_counterexample_from_file(tri_file):
    code, _ = run_command(["counterexample", "--graph", tri_file, "--v0", "v1"])
    assert code == 0


def test_corpus_theorem_nc():
    code, text = run_command(["corpus", "--max-vertices", "2", "--max-edges", "2", "--suite", "theorem-nc"])
    assert code == 0 and "failures: 0" in text


@pytest.mark.parametrize("suite", ["prop7", "prop8", "switching"])
def test_corpus_suites_small(suite):
    code, data = run_json("corpus", "--max-vertices", "2", "--max-edges", "2", "--suite", suite)
    assert code == 0 and data["failures"] == [] and data["instances"] > 0


def test_corpus_family_without_loops():
    code, data = run_json("corpus", "--max-vertices", "2", "--max-edges", "3", "--no-loops",
                          "--suite", "counterexample-family")
    assert code == 0 and data["failures"] == [] and data["instances"] > 0


def test_corpus_family_single_vertex_components_fail():
    # v0 alone in its component with negative loops: nothing is removed
    # except walks at v0, so the remaining set stays rotation-closed
    code, data = run_json("corpus", "--max-vertices", "1", "--max-edges", "2",
                          "--suite", "counterexample-family")
    assert code == 1 and data["instances"] > 0
    assert len(data["failures"]) == data["instances"]


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["check", "--bogus"],
    ["check"],
    ["check", "--graph", "/nonexistent.json"],
    ["check", "--graph", TRI, "--seedless"],
    ["check", "--graph", TRI, "--max-len", "-1"],
    ["corpus", "--suite", "nope"],
    ["corpus", "--suite", "theorem-nc", "--max-vertices", "9"],
    ["check", "--graph", TRI, "--walkset", "section2", "--v0", "zz"],
    ["check", "--graph", TRI, "--walkset", "explicit"],
    [],
])
def test_usage_errors(argv):
    code, text = run_command(argv)
    assert code == 2 and text.startswith("error:")


def test_bad_document(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"graph": {"vertices": ["v0"], "edges": []}, "walks": [{"start": "v0", "edges": ["e"]}]}')
    code, text = run_command(["check", "--graph", str(p)])
    assert code == 2 and "walks[0].edges[0]" in text


def test_inconclusive_explicit(tmp_path):
    p = tmp_path / "ex.json"
    p.write_text(json.dumps({
        "graph": {"vertices": ["a"], "edges": [{"id": "l", "ends": ["a", "a"]}]},
        "walkset": {"flavor": "explicit", "members": [], "bound": 2},
    }))
    code, text = run_command(["check", "--graph", str(p), "--max-len", "4", "--factor-len", "1"])
    assert code == 2 and "inconclusive" in text


def test_deterministic_bytes(tri_file):
    for argv in (["check", "--graph", tri_file, "--walkset", "section2"],
                 ["counterexample", "--format", "json"],
                 ["refute", "--graph", tri_file, "--walkset", "section2"]):
        assert run_command(argv) == run_command(argv)


def test_printed_witnesses_revalidate(tri_file):
    g, sig = example_triangle()
    oracle = build_section2_oracle(sig, "v0")
    _, data = run_json("check", "--graph", tri_file, "--walkset", "section2")
    checks = {c["name"]: c for c in data["checks"]}
    w = checks["rotation-closure"]["witness"]["walks"]
    a, b = walk_of(g, w["W"]), walk_of(g, w["R"])
    assert b in rotations(a) and (a in oracle) != (b in oracle)
    w = checks["prop8"]["witness"]["walks"]
    p, walk = walk_of(g, w["P"]), walk_of(g, w["W"])
    assert sigma_of(oracle, concat(concat(p, walk), inverse(p))) is not sigma_of(oracle, walk)

    _, data = run_json("refute", "--graph", tri_file, "--walkset", "section2")
    from signedwalks import Signature
    for row in data["refutations"]:
        tau = Signature(g, dict(zip(g.edges, row["signature"])))
        w = walk_of(g, row["witness"])
        assert (sign_of_walk(tau, w) is MINUS) != (w in oracle)


def test_module_entry_point(tri_file):
    proc = subprocess.run([sys.executable, "-m", "signedwalks", "counterexample"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "reproduced: yes" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "signedwalks", "check"], capture_output=True, text=True)
    assert proc.returncode == 2 and "error" in proc.stderr
