import json

import pandas as pd
import pytest

from uqosp_fock.algebra_calculations.alg_enums import Status
from uqosp_fock.algebra_calculations.ospclassic import MAX_CLASSICAL_N
from uqosp_fock.algebra_calculations.results import exact_check
from uqosp_fock.cli_application.backend_connection import get_classical_results
from uqosp_fock.cli_application.param_enums import (
    Check,
    Family,
    RunParameters,
    parse_choices,
    threads_from_env,
)
from uqosp_fock.cli_application.run_report import SCHEMA_VERSION, RunReport
from uqosp_fock.ospq_cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize(
    "word, expected",
    [
        ("a1- a1+", "q a1+ a1- + (2/(s+s^-1)) k1^-1"),
        ("k1", "k1"),
        ("a2- a1+", "q a1+ a2-"),
    ],
)
def test_normal_order_command(capsys, word, expected):
    code, out, _ = run(capsys, "normal-order", word)
    assert code == 0
    assert out.strip() == expected


def test_normal_order_parse_error(capsys):
    code, out, err = run(capsys, "normal-order", "a1+ x7")
    assert code == 2
    assert out == ""
    assert "token 1" in err and "'x7'" in err


def test_verify_empty_family(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1", "--families", "SERRE")
    assert code == 0
    assert "0 checks" in out


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1", "--families", "all", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == SCHEMA_VERSION
    assert report["status"] == "pass"
    assert report["parameters"]["n"] == 1
    assert {r["residual"] for r in report["results"]} == {"exact-zero"}
    ids = [r["id"] for r in report["results"]]
    assert len(ids) == len(set(ids))


@pytest.mark.slow
def test_verify_two_modes_all_families(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--families", "all", "--format", "json")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_reports_are_deterministic(capsys):
    argv = ("verify", "--n", "1", "--families", "CK,PRE", "--format", "json")
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])
    first.pop("timestamp")
    second.pop("timestamp")
    assert first == second


def test_verify_corrupted_build_fails(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--families", "PRE", "--corrupt")
    assert code == 1
    assert "FAIL PRE3[n=2,i=1]" in out


def test_verify_writes_json_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "--n", "1", "--families", "CK", "--format", "json", "--out", str(path)
    )
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["command"] == "verify"


def test_unknown_family_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["verify", "--n", "1", "--families", "XYZ"])
    assert err.value.code == 2


def test_catalog_n_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "--n", "6", "--families", "CK")
    assert code == 2
    assert "1 <= n <= 5" in err


def test_rep_all_checks(capsys):
    code, out, _ = run(capsys, "rep", "--n", "2", "--k", "3", "--checks", "all")
    assert code == 0
    assert "dim: 9" in out


def test_rep_matrix_export(capsys, tmp_path):
    path = tmp_path / "m.csv"
    code, _, _ = run(capsys, "rep", "--n", "1", "--k", "2", "--checks", "unitarity", "--out", str(path))
    assert code == 0
    table = pd.read_csv(path)
    assert list(table.columns) == ["op", "row", "col", "re", "im"]
    plus = table[table["op"] == "a1+"]
    assert len(plus) == 1
    assert plus.iloc[0]["re"] == pytest.approx(2**0.25)
    assert table[["row", "col"]].max().max() <= 1


def test_rep_guard(capsys):
    code, _, err = run(capsys, "rep", "--n", "4", "--k", "20")
    assert code == 2
    assert "160000" in err


def test_rep_refuses_non_unitary_q(capsys):
    code, _, err = run(capsys, "rep", "--n", "1", "--q", "1.1")
    assert code == 2
    assert "|q| = 1 is False" in err


def test_rep_from_root_of_unity(capsys):
    code, out, _ = run(capsys, "rep", "--n", "1", "--q", "0.5+0.8660254037844386j", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["dim"] == 3
    assert report["parameters"]["k"] == 3


def test_decompose_json(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "2", "--k", "3", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["dims"] == [1, 2, 3, 2, 1]
    assert report["blocks"] == 5
    assert [b["dim"] for b in report["decomposition"]["blocks"]] == [1, 2, 3, 2, 1]


def test_decompose_text(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "1", "--k", "4")
    assert code == 0
    assert "blocks: 4" in out
    assert "dims: [1, 1, 1, 1]" in out


def test_parse_choices():
    assert parse_choices("all", Check) == tuple(Check)
    assert parse_choices("G, classical", Family) == (Family.CLASSICAL, Family.G)
    with pytest.raises(ValueError):
        parse_choices("CK,nope", Family)


def test_threads_from_env(monkeypatch):
    monkeypatch.delenv("OSPQ_THREADS", raising=False)
    assert threads_from_env() == 1
    monkeypatch.setenv("OSPQ_THREADS", "4")
    assert threads_from_env() == 4
    assert RunParameters(n=1).threads == 4
    monkeypatch.setenv("OSPQ_THREADS", "zero")
    assert threads_from_env() == 1
    monkeypatch.setenv("OSPQ_THREADS", "-3")
    assert threads_from_env() == 1


def test_run_report_status_and_duplicates():
    report = RunReport("verify", RunParameters(n=1))
    assert report.status is Status.PASS
    report.extend([exact_check("X[n=1]", True), exact_check("Y[n=1]", False)])
    assert report.status is Status.FAIL
    assert report.exit_code == 1
    assert [r.id for r in report.failures] == ["Y[n=1]"]
    with pytest.raises(ValueError):
        report.extend([exact_check("X[n=1]", True)])


def test_classical_checks_follow_the_matrix_limit(caplog):
    assert get_classical_results(RunParameters(n=1))
    with caplog.at_level("WARNING"):
        assert get_classical_results(RunParameters(n=MAX_CLASSICAL_N + 1)) == []
    assert f"skipped for n={MAX_CLASSICAL_N + 1}" in caplog.text


def test_rep_out_holds_matrices_and_report_stays_on_stdout(capsys, tmp_path):
    path = tmp_path / "m.csv"
    code, out, _ = run(
        capsys, "rep", "--n", "1", "--k", "3", "--checks", "unitarity", "--format", "json", "--out", str(path)
    )
    assert code == 0
    assert json.loads(out)["dim"] == 3
    assert list(pd.read_csv(path).columns) == ["op", "row", "col", "re", "im"]
    with pytest.raises(SystemExit):
        main(["rep", "--help"])
    assert "matrix CSV" in " ".join(capsys.readouterr().out.split())
