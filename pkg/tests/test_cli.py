import json

import pytest

from grweyl.cli import main

from conftest import ROSE2, LOOP1, TWO_LOOPS

S3_LABELS = """group: perm 3
label a (1 2)
label b (2 3)
"""
Z2_LABELS = """group: Z/2
label a 1
label b 1
"""


@pytest.fixture
def rose2_file(tmp_path):
    p = tmp_path / "rose2.graph"
    p.write_text(ROSE2)
    return str(p)


@pytest.fixture
def loop1_file(tmp_path):
    p = tmp_path / "loop1.graph"
    p.write_text(LOOP1)
    return str(p)


@pytest.fixture
def s3_file(tmp_path):
    p = tmp_path / "s3.labels"
    p.write_text(S3_LABELS)
    return str(p)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_graph_check(rose2_file, capsys):
    code, rep = run_json(capsys, ["graph", "check", rose2_file, "--json"])
    assert code == 0
    checks = {r["check"]: r["ok"] for r in rep["results"] if "check" in r}
    assert checks["no-sinks"] and checks["condition-L"] and checks["pair-sync"]


def test_graph_check_failing(tmp_path, capsys):
    p = tmp_path / "two.graph"
    p.write_text(TWO_LOOPS)
    code, rep = run_json(capsys, ["graph", "check", str(p), "--json"])
    assert code == 1


def test_graph_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.graph"
    p.write_text("vertices: v\nedge a v u\n")
    code = main(["graph", "check", str(p)])
    assert code == 2


def test_algebra_eval(rose2_file, tmp_path, capsys):
    e = tmp_path / "expr.txt"
    e.write_text("S(a)^* * S(a) + zeta(4) * P(v)\n")
    code, rep = run_json(capsys, ["algebra", "eval", rose2_file, str(e), "--json"])
    assert code == 0
    assert "(1 + zeta(4))" in rep["results"][0]["text"]


def test_verify_relations(rose2_file, capsys):
    code, rep = run_json(capsys, ["algebra", "verify-relations", rose2_file, "--json"])
    assert code == 0 and rep["results"][0]["ok"]


def test_oracle_test(capsys):
    code, rep = run_json(capsys, ["algebra", "oracle-test", "--seed", "3",
                                  "--count", "100", "--json"])
    assert code == 0
    assert rep["results"][0]["triples"] >= 100


def test_watatani(rose2_file, s3_file, capsys):
    code, rep = run_json(capsys, ["watatani", rose2_file, s3_file, "--json"])
    assert code == 0
    entries = {r.get("check"): r for r in rep["results"] if "check" in r}
    assert entries["index-equals-group-order"]["index"] == "(6)*P(v)"
    notes = [r for r in rep["results"] if r.get("note") == "index-convention"]
    assert notes and "k!" in notes[0]["text"]


def test_watatani_z2(rose2_file, tmp_path, capsys):
    p = tmp_path / "z2.labels"
    p.write_text(Z2_LABELS)
    code, rep = run_json(capsys, ["watatani", rose2_file, str(p), "--json"])
    assert code == 0
    entries = {r.get("check"): r for r in rep["results"] if "check" in r}
    assert entries["index-equals-group-order"]["index"] == "(2)*P(v)"


def test_cocycle_factor(rose2_file, s3_file, capsys):
    code, rep = run_json(capsys, ["cocycle", "factor", rose2_file, s3_file,
                                  "all", "--json"])
    assert code == 0
    rounds = [r for r in rep["results"] if "check" in r]
    assert len(rounds) == 2 and all(r["ok"] for r in rounds)


def test_cocycle_transitivity(rose2_file, s3_file, capsys):
    code, rep = run_json(capsys, ["cocycle", "transitivity", rose2_file,
                                  s3_file, "--json"])
    assert code == 0


def test_conjugacy_search(rose2_file, loop1_file, capsys):
    code, rep = run_json(capsys, ["conjugacy", "search", rose2_file, rose2_file,
                                  "--w", "1", "--m", "0", "--json"])
    assert code == 0
    assert any(r.get("check") == "certificate-replay" and r["ok"]
               for r in rep["results"])
    code, rep = run_json(capsys, ["conjugacy", "search", rose2_file, loop1_file,
                                  "--w", "1", "--m", "1", "--json"])
    assert code == 1
    assert any(r.get("note") == "prune" for r in rep["results"])


def test_flip_check(rose2_file, loop1_file, capsys):
    code, rep = run_json(capsys, ["flip", "check", rose2_file, "--L", "1", "--json"])
    assert code == 0
    checks = {r["check"]: r for r in rep["results"] if "check" in r}
    assert checks["obstruction-found"]["cylinders"] == ["a"]
    assert checks["image-covers-space"]["ok"]
    assert checks["shift-injective-on-U"]["ok"]
    assert checks["U-is-proper"]["ok"]
    code, rep = run_json(capsys, ["flip", "check", loop1_file, "--L", "1", "--json"])
    assert code == 1


def test_weyl_enumerate(rose2_file, loop1_file, capsys):
    code, rep = run_json(capsys, ["weyl", "enumerate", rose2_file,
                                  "--w", "1", "--m", "1", "--json"])
    assert code == 0
    notes = {r.get("note"): r for r in rep["results"] if "note" in r}
    assert notes["automorphisms"]["count"] == 8
    assert main(["weyl", "enumerate", loop1_file, "--w", "1", "--m", "1"]) == 2


def test_weyl_semidirect(capsys):
    code, rep = run_json(capsys, ["weyl", "semidirect-test", "--seed", "1",
                                  "--count", "2", "--depth", "2", "--json"])
    assert code == 0


def test_reports_are_deterministic(rose2_file, s3_file, capsys):
    outs = []
    for _ in range(2):
        main(["watatani", rose2_file, s3_file, "--seed", "9", "--json"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
