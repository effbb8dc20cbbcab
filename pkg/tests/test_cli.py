import json
import subprocess
import sys

import pytest

from semiarcs.cli import main, q_range


def run(*args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "semiarcs", *args], input=stdin,
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_construct_and_verify_round_trip():
    rc, out, _ = run("construct", "projective-triangle", "--q", "5")
    assert rc == 0
    cert = json.loads(out)
    assert cert["size"] == 9 and cert["verified_t"] == 2 and cert["ok"]
    rc, out2, _ = run("verify", stdin=out)
    assert rc == 0 and json.loads(out2)["ok"]


def test_construct_is_byte_stable():
    a = run("construct", "thm-II-iii", "--q", "7", "--param", "n=3")[1]
    b = run("construct", "thm-II-iii", "--q", "7", "--param", "n=3")[1]
    assert a == b and json.loads(a)["verified_t"] == 3


def test_tampered_certificate_fails():
    out = run("construct", "projective-triangle", "--q", "7")[1]
    data = json.loads(out)
    data["points"] = data["points"][:-1]
    rc, _, _ = run("verify", stdin=json.dumps(data))
    assert rc == 1


def test_known_failure_exits_one():
    rc, out, _ = run("construct", "suetake", "--q", "4", "--param", "A=[1,2]")
    assert rc == 1 and json.loads(out)["verdict"] == "not-semiarc"


def test_classify(tmp_path):
    f = tmp_path / "pts.json"
    f.write_text(json.dumps({"points": [0, 1, 4, 5, 20, 25, 26, 29, 30]}))
    rc, out, _ = run("classify", "--plane", "pg:5", "--points", str(f))
    rep = json.loads(out)
    assert rc == 0 and rep["t"] == 2 and rep["redei"]["is_blocking"]
    rc, out, _ = run("classify", "--q", "3", "--points", "0,1,2,4")
    assert rc == 1 and json.loads(out)["verdict"] == "not-semiarc"


def test_check_i0():
    rc, out, _ = run("check", "i0", "--q", "4..8")
    rep = json.loads(out)
    assert rc == 0 and rep["verdict"] == "pass" and rep["params"]["q"] == [4, 5, 7, 8]


def test_search_and_replay(tmp_path):
    out = tmp_path / "c.json"
    rc, _, _ = run("search", "--q", "5", "--t", "2", "--out", str(out))
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["labelled_total"] == 1500 and data["complete"]
    rc, res, _ = run("verify", str(out))
    assert rc == 0 and json.loads(res)["replayed"]


def test_search_resume(tmp_path):
    rc, out, _ = run("search", "--q", "7", "--t", "4", "--resume", "--store", str(tmp_path), "--time-limit", "0")
    assert rc == 0 and not json.loads(out)["complete"]
    assert list(tmp_path.rglob("*.frontier.json"))
    rc, out, _ = run("search", "--q", "7", "--t", "4", "--resume", "--store", str(tmp_path))
    assert json.loads(out)["complete"] and json.loads(out)["labelled_total"] == 12348
    assert not list(tmp_path.rglob("*.frontier.json"))


def test_census_store(tmp_path, monkeypatch):
    monkeypatch.setenv("SEMIARC_STORE", str(tmp_path))
    rc, out, _ = run("census", "--q", "4")
    assert rc == 0 and json.loads(out)["complete"]
    assert len(list((tmp_path / "pg_4").glob("t*.json"))) == 2


def test_equiv():
    a = "0,1,4,5,20,25,26,29,30"
    rc, out, _ = run("construct", "thm-II-iii", "--q", "5", "--param", "n=2")
    b = ",".join(map(str, json.loads(out)["points"]))
    rc, out, _ = run("equiv", "--q", "5", "--a", a, "--b", b)
    assert rc == 0 and json.loads(out)["equivalent"]
    rc, out, _ = run("equiv", "--q", "5", "--a", a, "--b", "0,1,2")
    assert rc == 1


@pytest.mark.parametrize("argv", [
    ["construct", "projective-triangle", "--q", "4"],
    ["construct", "nonsense", "--q", "5"],
    ["search", "--q", "5", "--t", "9"],
    ["classify", "--plane", "pg:6", "--points", "1"],
    ["check", "i0", "--q", "6..6"],
    ["verify", "/nonexistent.json"],
    [],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("semiarcs") and err.count("\n") == 1


def test_q_range():
    assert q_range("4..9") == [4, 5, 7, 8, 9]
    assert q_range("2,3") == [2, 3]
