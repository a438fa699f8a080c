"""CLI contracts: exit codes, machine reports, determinism, env overrides."""

import json

import pytest

import fqdist
from fqdist import cli
from fqdist.errors import ClaimViolation


def run(argv):
    return cli.main(argv)


def test_verify_happy_path(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run(["verify", "--p", "3", "--r", "1", "--oracle", "structured", "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "missing element #28" in text
    rep = json.loads(out.read_text())
    assert rep["delta_ne_Fq"] is True
    assert rep["size_delta"] == 441
    assert rep["oracle_mode"] == "structured-only"


def test_verify_with_both_oracles(tmp_path):
    out = tmp_path / "report.json"
    code = run(["verify", "--p", "3", "--r", "1", "--oracle", "both", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["delta_ne_Fq"] is True
    assert rep["oracle_mode"] == "bruteforce+structured"


def test_verify_rejects_composite_p(capsys):
    assert run(["verify", "--p", "4", "--r", "1"]) == 2
    assert "not prime" in capsys.readouterr().err


def test_verify_rejects_char2(capsys):
    assert run(["verify", "--p", "2", "--r", "1"]) == 2


def test_usage_errors_exit_2():
    assert run(["verify", "--p", "3"]) == 2  # missing --r
    assert run(["nonsense"]) == 2
    assert run([]) == 2
    assert run(["verify", "--p", "3", "--r", "1", "--format", "csv"]) == 2
    assert run(["verify", "--p", "3", "--r", "1", "--basis", "1,2,3"]) == 2
    assert run(["verify", "--p", "3", "--r", "1", "--threads", "0"]) == 2


def test_claim_violation_maps_to_exit_1(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise ClaimViolation("synthetic failure")

    monkeypatch.setattr(cli.verify, "verify_counterexample", boom)
    assert run(["verify", "--p", "3", "--r", "1"]) == 1
    assert "CLAIM VIOLATED" in capsys.readouterr().err


def test_pair_budget_flag(capsys):
    assert run(["verify", "--p", "3", "--r", "1", "--pair-budget", "100"]) == 2
    assert "exceeds the budget" in capsys.readouterr().err


def test_pair_budget_env_override(monkeypatch, capsys):
    monkeypatch.setenv(cli.ENV_PAIR_BUDGET, "50")
    assert run(["verify", "--p", "3", "--r", "1"]) == 2
    # explicit flag wins over the environment
    assert run(["verify", "--p", "3", "--r", "1", "--oracle", "structured",
                "--pair-budget", str(10**9)]) == 0


def test_bad_env_budget(monkeypatch):
    monkeypatch.setenv(cli.ENV_PAIR_BUDGET, "lots")
    assert run(["verify", "--p", "3", "--r", "1"]) == 2


def test_scan_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    code = run(["scan", "--p", "3", "--r", "1", "--format", "csv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("r,q,size_E,size_delta")
    assert lines[1] == "1,729,6561,441,441,49,81,0.604938,true"


def test_scan_csv_to_stdout(capsys):
    assert run(["scan", "--p", "3", "--r", "1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0].startswith("r,q,")
    assert len(lines) == 2


def test_scan_row_failure_exit_code(tmp_path):
    out = tmp_path / "scan.json"
    code = run(["scan", "--p", "7", "--r", "1,2", "--out", str(out)])  # 7^12 too large
    assert code == 2
    doc = json.loads(out.read_text())
    assert doc["rows"][0]["size_delta"] == 61201
    assert "error" in doc["rows"][1]


def test_construct_record(tmp_path, capsys):
    out = tmp_path / "cons.json"
    assert run(["construct", "--p", "3", "--r", "1", "--out", str(out)]) == 0
    rec = json.loads(out.read_text())
    assert rec == {
        "p": 3,
        "r": 1,
        "field": {"p": 3, "n": 6, "modulus": [2, 1, 0, 0, 0, 0, 1], "generator_index": 3},
        "subfield_m": 2,
        "i_index": 129,
        "basis": [1, 3],
    }


def test_census_cli(tmp_path, capsys):
    out = tmp_path / "census.json"
    assert run(["census", "--q", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["max_incomplete_size"] == 3
    assert run(["census", "--q", "7"]) == 2


def test_two_runs_identical_reports(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--p", "3", "--r", "1", "--oracle", "structured"]
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da.pop("elapsed_seconds")
    db.pop("elapsed_seconds")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def test_selftest(capsys):
    assert run(["selftest", "--seed", "1", "--triples", "300"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS" in out


def test_help_exits_zero():
    assert run(["--help"]) == 0
