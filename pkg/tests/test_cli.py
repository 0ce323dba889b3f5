import json

import pytest

from ellpairs import arith, classify, cli, toric
from ellpairs.lattice import LatticeTriangle


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_oracle(capsys):
    code, out, _ = run(capsys, "classify", "--oracle", "--amax", "50", "--cmax", "250", "--jobs", "2")
    assert code == 0
    data = json.loads(out)
    assert [d["vertices"] for d in data] == [ct.to_json()["vertices"] for ct in classify.classify_all()]
    assert len(data) == 3 and all(d["primitive"] and d["paper_anchor"] for d in data)


def test_classify_cases(capsys):
    code, out, _ = run(capsys, "classify", "--case", "1")
    assert code == 0 and json.loads(out) == []
    code, out, _ = run(capsys, "classify", "--case", "1", "--no-strict")
    assert len(json.loads(out)) == 5
    code, out, _ = run(capsys, "classify", "--case", "3")
    assert [d["abc"] for d in json.loads(out)] == [list(k) for k in classify.case3_triples()]


def test_triangle_fibration(capsys):
    code, out, _ = run(capsys, "triangle", "fibration", "0,0 2,0 5,8", "--mult", "4")
    assert code == 0
    data = json.loads(out)
    assert data["fibers"] == ["I1*", "I4", "I1"]
    assert data["extremal"] is True and data["euler_total"] == 12
    ref = toric.fibration_for_triangle(LatticeTriangle.parse("0,0 2,0 5,8"), 4).to_json()
    assert {k: v for k, v in data.items() if k != "paper_anchor"} == json.loads(json.dumps(ref))


def test_triangle_analyze(capsys):
    code, out, _ = run(capsys, "triangle", "analyze", "[[0,0],[2,0],[5,8]]", "--mult", "4")
    data = json.loads(out)
    assert code == 0 and data["linear_system_dimension"] == 2 and data["adjoint_dimension"] == 1
    assert data["arithmetic_genus"] == 1 and data["passes"]


def test_nodal_commands(capsys):
    code, out, _ = run(capsys, "nodal", "test", "--a", "2", "--q", "3", "--p", "13")
    assert code == 0 and json.loads(out)["outcome"] == "non_polyhedral"
    code, out, _ = run(capsys, "nodal", "roots", "--a", "2", "--q", "3")
    data = json.loads(out)
    assert len(data["roots"]) == 240 and data["census"]["kernel"] == 126
    code, out, _ = run(capsys, "nodal", "grouplaw", "--count", "40", "--seed", "7")
    assert code == 0 and json.loads(out)["mismatches"] == 0
    code, out, _ = run(capsys, "--format", "text", "nodal", "test", "--a", "1/2", "--q", "3", "--p", "7")
    assert code == 0 and "outcome=" in out


def test_scan_jobs_byte_identical(capsys, tmp_path):
    args = ["nodal", "scan", "--a", "2", "--q", "3", "--limit", "30000", "--l", "2", "--l", "3"]
    _, one, _ = run(capsys, *args, "--jobs", "1")
    _, four, _ = run(capsys, *args, "--jobs", "4")
    assert one == four
    path = tmp_path / "rows.csv"
    code, _, _ = run(capsys, *args, "--out", str(path))
    assert code == 0 and path.read_text().startswith("p,polyhedral,ord_a,ord_q,l2,l3\n")
    code, out, _ = run(capsys, "--format", "csv", *args)
    assert out == path.read_text()


def test_validation_errors_exit_1(capsys):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "triangle", "analyze", "0,0 1,1 2,2", "--mult", "1")[0] == 1
    assert run(capsys, "triangle", "fibration", "0,0 1,0 0,1", "--mult", "1")[0] == 1
    assert run(capsys, "nodal", "test", "--a", "2", "--q", "4", "--p", "13")[0] == 1
    assert run(capsys, "nodal", "test", "--a", "2/0", "--q", "3", "--p", "13")[0] == 1
    assert run(capsys, "nodal", "test", "--a", "2", "--q", "3", "--p", "12")[0] == 1
    assert run(capsys, "--format", "csv", "classify")[0] == 1
    assert run(capsys, "triangle", "fibration", "0,0 2,0 5,8", "--mult", "4", "--h", "x +* y")[0] == 1


def test_inconsistency_exit_2(capsys, monkeypatch):
    monkeypatch.setattr(arith, "polyhedral_by_roots", lambda a, q, p: False)
    arith._root_images.cache_clear()
    code, _, err = run(capsys, "nodal", "test", "--a", "2", "--q", "3", "--p", "7")
    assert code == 2 and "inconsistency" in err


def test_env_log(capsys, monkeypatch):
    monkeypatch.setenv("EP_LOG", "info")
    assert run(capsys, "nodal", "test", "--a", "2", "--q", "3", "--p", "7")[0] == 0
