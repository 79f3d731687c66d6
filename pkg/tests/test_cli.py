import json

import pytest

from alia import cli
from alia.report import Case, VerificationReport, table_csv
from alia.errors import DomainError


@pytest.mark.parametrize("text,value", [
    ("i", 1j), ("2i", 2j), ("-i", -1j), ("0.3+0.9i", 0.3 + 0.9j), ("0.5-0.8i", 0.5 - 0.8j),
    ("1e-3+2i", 0.001 + 2j), ("3", 3), ("2j", 2j),
])
def test_parse_complex(text, value):
    assert cli.parse_complex(text) == value


def test_parse_errors():
    with pytest.raises(ValueError):
        cli.parse_tau("-i")
    with pytest.raises(ValueError):
        cli.parse_triple("1,2")


def test_case_pass_is_derived():
    assert Case("a", 1e-12, 1e-10, 1, 0).passed
    assert not Case("a", float("nan"), 1e-10, 1, 0).passed
    with pytest.raises(DomainError):
        Case("a", 1.0, 1e-10, 1, 0, passed=True)


def test_report_round_trip():
    rep = VerificationReport("x", {"tau": [0, 1]})
    rep.add("c1", 1e-13, 1e-10, 5, 0)
    rep.add("c2", 1.0, 1e-10, 5, 0)
    back = VerificationReport.from_json(rep.to_json())
    assert back.to_dict() == rep.to_dict()
    assert not back.passed
    assert rep.to_csv().splitlines()[0] == "name,max_abs_residual,tol,pass,samples,seed"


def test_table_csv_round_trips_floats():
    out = table_csv([0.1 + 0.2j], [1 / 3 + 0j])
    row = out.splitlines()[1].split(",")
    assert float(row[2]) == 1 / 3


def test_eval(capsys):
    assert cli.run(["eval", "--fn", "theta3", "--z", "0", "--tau", "i"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("1.086434811213308")
    assert cli.run(["eval", "--fn", "lambda", "--tau", "i"]) == 0


def test_tau_solve(capsys):
    assert cli.run(["tau-solve", "--r", "2,1,0"]) == 0
    out = capsys.readouterr().out
    lam = complex(out.split("lambda=")[1].strip().replace("i", "j"))
    assert abs(lam - 0.5) < 1e-12


def test_verify_json_and_report(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code = cli.run(["verify", "--suite", "omega", "--tau", "2i", "--samples", "10", "--out", str(path)])
    assert code == 0
    data = json.loads(path.read_text())
    assert all(c["pass"] for c in data["cases"])
    assert cli.run(["report", str(path)]) == 0
    assert cli.run(["report", str(path), "--format", "csv"]) == 0


def test_verify_holod_degenerate(capsys):
    assert cli.run(["verify", "--suite", "holod", "--tau", "i", "--samples", "5"]) == 1
    assert "degenerate" in capsys.readouterr().err.lower()


def test_tolerance_from_env(monkeypatch, capsys):
    monkeypatch.setenv("ALIA_TOL", "1e-30")
    assert cli.run(["verify", "--suite", "theta", "--samples", "5"]) == 1
    monkeypatch.setenv("ALIA_TOL", "abc")
    assert cli.run(["verify", "--suite", "theta", "--samples", "5"]) == 2


def test_usage_errors(capsys):
    assert cli.run(["eval", "--fn", "nope"]) == 2
    assert cli.run(["verify", "--tau", "-2i"]) == 2
    assert cli.run(["verify", "--format", "xml", "--suite", "theta"]) == 2
    assert cli.run(["tau-solve", "--r", "1,1,0"]) == 2


def test_table(capsys):
    assert cli.run(["table", "--fn", "mu1", "--samples", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "z_re,z_im,value_re,value_im" and len(lines) == 4
