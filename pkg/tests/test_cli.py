import json
import os
import subprocess
import sys

import pytest

from conftest import FIXTURES
from tamesymbol.cli import main
from tamesymbol.mutations import ENV_VAR


def fx(name):
    return str(FIXTURES / name)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reciprocity_exit_zero_and_replay(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, stdout, _ = run(["verify", "reciprocity", "--curve", fx("p1_f5.curve"),
                           "--samples", "50", "--seed", "7", "--out", str(out)], capsys)
    assert code == 0 and "overall: PASS" in stdout
    data = json.loads(out.read_text())
    assert data["format"] == "tamesymbol-report" and data["seed"] == 7
    assert data["config"]["samples"] == 50 and "timings" in data
    code, stdout, _ = run(["verify", "reciprocity", "--replay", str(out)], capsys)
    assert code == 0 and "replay identical" in stdout


def test_replay_detects_edit(tmp_path, capsys):
    out = tmp_path / "r.json"
    run(["verify", "kappa", "--curve", fx("e_x3_minus_x_f5.curve"), "--out", str(out)], capsys)
    data = json.loads(out.read_text())
    data["results"][0]["result"]["tampered"] = True
    out.write_text(json.dumps(data))
    code, stdout, _ = run(["verify", "kappa", "--replay", str(out)], capsys)
    assert code == 1 and "DIFFERS" in stdout


def test_stdout_report_is_json(capsys):
    code, stdout, _ = run(["verify", "theorem-finite", "--curve", fx("e_x3_minus_x_f5.curve"),
                           "--seed", "1"], capsys)
    assert code == 0
    data = json.loads(stdout)
    res = data["results"][0]["result"]["condition_ii"]
    assert res["W1"] == res["W2"] == res["W3"] and res["unimodular"]
    assert any("trusted" in n for n in data["notes"])


def test_fixture_errors_exit_two(tmp_path, capsys):
    code, _, err = run(["verify", "reciprocity", "--curve", fx("corrupt.curve")], capsys)
    assert code == 2 and "error" in err
    code, _, _ = run(["verify", "reciprocity", "--curve", str(tmp_path / "missing.curve")], capsys)
    assert code == 2
    code, _, _ = run(["verify", "reciprocity"], capsys)
    assert code == 2
    bad = tmp_path / "bad.idele"
    bad.write_text("curve = %s\nentry = poly 0 1 : oops\n" % fx("p1_f5.curve"))
    code, _, _ = run(["witness", "separate", "--idele", str(bad)], capsys)
    assert code == 2


def test_witness_separate_deg1(capsys):
    code, stdout, _ = run(["witness", "separate", "--curve", fx("p1_f5.curve"),
                           "--idele", fx("deg1.idele")], capsys)
    assert code == 0
    r = json.loads(stdout)["results"][0]["result"]
    assert r["stage"] == 1 and r["value"] == 2 and r["witness"] is not None


def test_vacuous_curve_exits_zero(capsys):
    code, stdout, _ = run(["verify", "theorem-finite", "--curve", fx("e_ss_f2.curve")], capsys)
    assert code == 0
    checks = {r["check"].split()[0]: r["verdict"] for r in json.loads(stdout)["results"]}
    assert checks == {"theorem-finite": "VACUOUS", "place-degree": "PASS"}


def test_strict_turns_indeterminate_into_failure(monkeypatch, capsys):
    from tamesymbol import campaigns
    monkeypatch.setattr(campaigns, "abelian", lambda **kw: {"verdict": "INDETERMINATE"})
    assert main(["verify", "abelian", "--models", "1"]) == 0
    assert main(["verify", "abelian", "--models", "1", "--strict"]) == 1
    capsys.readouterr()


def test_sign_mutation_exits_one_via_env():
    env = dict(os.environ, **{ENV_VAR: "sign"})
    proc = subprocess.run([sys.executable, "-m", "tamesymbol", "verify", "reciprocity",
                           "--curve", fx("p1_f5.curve"), "--samples", "40", "--seed", "7"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 1
    data = json.loads(proc.stdout)
    assert data["verdict"] == "FAIL"
    assert "factors" in json.dumps(data)


def test_bad_mutation_name_rejected():
    env = dict(os.environ, **{ENV_VAR: "nonsense"})
    proc = subprocess.run([sys.executable, "-m", "tamesymbol", "verify", "reciprocity",
                           "--curve", fx("p1_f5.curve"), "--samples", "2"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 2 and "unknown mutation" in proc.stderr
