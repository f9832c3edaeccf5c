import json

import pytest

from d1u import cli, io
from d1u.constructions import build
from d1u.diffcalc import GroupFunction, is_d1u_bruteforce
from d1u.groups import AbelianGroup


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_text_and_json(capsys):
    code, out, _ = run(capsys, "plan", "14")
    assert code == 0
    assert "bound on C(d): 39" in out and "bases_count: 40" in out
    code, out, _ = run(capsys, "plan", "14", "--json")
    bundle = json.loads(out)
    assert bundle["outputs"]["plan"]["bound"] == 39
    assert bundle["outputs"]["plan"]["bases_count"] == 40
    assert set(bundle) == {"command", "argv", "inputs", "outputs", "versions", "timings"}
    assert set(bundle["outputs"]["plan"]["comparison_bounds"]) == {"corollary7", "chebyshev", "prior", "dlogd_only"}


def test_global_json_flag(capsys):
    code, out, _ = run(capsys, "--json", "plan", "21")
    assert json.loads(out)["outputs"]["plan"]["bound"] == 46


def test_plan_usage_errors(capsys):
    assert run(capsys, "plan", "1")[0] == 2
    assert run(capsys, "plan")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_build_verify_roundtrip(tmp_path, capsys):
    path = tmp_path / "f21.json"
    assert run(capsys, "build", "21", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "d1u: true" in out
    code, out, _ = run(capsys, "verify", str(path), "--bruteforce", "--json")
    assert json.loads(out)["outputs"]["is_d1u"] is True


def test_roundtrip_all_d(tmp_path):
    for d in range(2, 101):
        f = build(d)
        path = tmp_path / f"f{d}.json"
        io.write_function(f, path)
        g = io.read_function(path)
        assert g == f
        if d <= 40:
            assert is_d1u_bruteforce(g)


def test_verify_negative(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"d": 4, "codomain": [4], "values": [[0], [1], [2], [3]]}))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and "d1u: false" in out and "a=1, x=0, x'=1" in out


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"d": 3,\n "values": [}')
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "line 2 column" in err
    path.write_text(json.dumps({"d": 3, "codomain": [5]}))
    assert run(capsys, "verify", str(path))[0] == 2
    path.write_text(json.dumps({"d": 2, "codomain": [5], "values": [[0], [9]]}))
    assert run(capsys, "verify", str(path))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_noncanonical_codomain_file():
    f = io.function_from_json({"d": 3, "codomain": [6], "values": [[0], [1], [3]]})
    assert f.codomain == AbelianGroup([2, 3])
    assert f.values == ((0, 0), (1, 1), (1, 0))


def test_design_command(tmp_path, capsys):
    path = tmp_path / "f6.json"
    io.write_function(build(6), path)
    out_path = tmp_path / "design.json"
    code, out, _ = run(capsys, "design", str(path), "--trials", "20", "-o", str(out_path))
    assert code == 0 and "CERTIFIED" in out
    data = json.loads(out_path.read_text())
    assert set(data) >= {"d", "bases", "weights", "residual", "potential_gap", "unbiasedness"}
    assert len(data["bases"]) == 16 and len(data["bases"][0][0][0]) == 2
    code, out, _ = run(capsys, "design", str(path), "--check-only", "--json")
    assert code == 0 and json.loads(out)["outputs"]["bases_count"] == 16


def test_design_refuses_non_d1u_and_large(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"d": 4, "codomain": [4], "values": [[0], [1], [2], [3]]}))
    assert run(capsys, "design", str(path))[0] == 2
    io.write_function(build(40), path)
    assert run(capsys, "design", str(path))[0] == 2


def test_search_command(capsys):
    code, out, _ = run(capsys, "search", "4", "--min-order", "4", "--max-order", "6", "--budget", "10", "--seed", "0", "--json")
    assert code == 0
    outcome = json.loads(out)["outputs"]["outcome"]
    assert outcome["min_order"] == 5
    code, out, _ = run(capsys, "search", "4", "--group", "2,2")
    assert code == 1 and "EXHAUSTED" in out
    assert run(capsys, "search", "4", "--min-order", "2")[0] == 2


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--json")
    rows = json.loads(out)["outputs"]["rows"]
    assert [(r["d"], r["systematic"], r["computer_recorded"]) for r in rows] == [(14, 39, 20), (20, 57, 32), (21, 46, 37)]
    code, out, _ = run(capsys, "table")
    assert "39" in out and "57" in out and "46" in out
