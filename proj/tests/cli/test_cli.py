"""End-to-end checks of the hypermat command-line tool (exit codes and outputs)."""

import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("HYPERMAT_CLI", "hypermat")


def run(*args, stdin=None, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run(
        [CLI, *args], input=stdin, capture_output=True, text=True, env=full_env, timeout=300
    )


def eval_doc(doc):
    return run("eval", "-", stdin=json.dumps(doc))


def test_eval_gamma_of_identity():
    doc = {"fn": "gamma", "p": {"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}}
    r = eval_doc(doc)
    assert r.returncode == 0, r.stderr
    entries = json.loads(r.stdout)["result"]["entries"]
    assert entries[0][0][0] == pytest.approx(1.0, abs=1e-14)
    assert entries[0][1][0] == pytest.approx(0.0, abs=1e-14)
    assert entries[1][1][0] == pytest.approx(1.0, abs=1e-14)


def test_eval_pfq_scalar_log_case():
    r = eval_doc({"fn": "pfq", "num": [1, 0.5], "den": [1.5], "z": 0.25})
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert out["result"]["entries"][0][0][0] == pytest.approx(math.log(3), abs=1e-7)
    assert out["diagnostics"]["converged"] is True
    assert out["diagnostics"]["terms"] > 0


def test_eval_ragged_matrix_names_the_path():
    doc = {"fn": "gamma", "p": {"dim": 2, "entries": [[[1, 0], [0, 0]], [[1, 0]]]}}
    r = eval_doc(doc)
    assert r.returncode == 2
    assert "/p/entries/1" in r.stderr


def test_eval_invalid_json_is_malformed():
    r = run("eval", "-", stdin="{not json")
    assert r.returncode == 2


def test_eval_unknown_function_is_malformed():
    r = eval_doc({"fn": "zeta", "p": 1})
    assert r.returncode == 2
    assert "/fn" in r.stderr


def test_eval_domain_error_exit_code():
    r = eval_doc({"fn": "pfq", "num": [1, 1], "den": [1], "z": 2})
    assert r.returncode == 3
    assert "|z| <= 1" in r.stderr


def test_eval_precondition_error_exit_code():
    p = {"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]}
    q = {"dim": 2, "entries": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]}
    r = eval_doc({"fn": "beta", "p": p, "q": q})
    assert r.returncode == 3


def test_missing_input_file_is_io_error(tmp_path):
    r = run("eval", str(tmp_path / "absent.json"))
    assert r.returncode == 4


def test_unwritable_output_is_io_error(tmp_path):
    r = run("suite", "--dims", "1", "--cases", "1", "--identities", "T1",
            "--out", str(tmp_path / "no" / "such" / "dir.json"))
    assert r.returncode == 4


def test_bad_flag_value_is_malformed():
    assert run("suite", "--format", "xml").returncode == 2
    assert run("suite", "--tol", "-1").returncode == 2


def test_suite_small_run_passes_and_covers_all_identities(tmp_path):
    out = tmp_path / "report.json"
    r = run("suite", "--seed", "42", "--dims", "1,2", "--tol", "1e-7", "--cases", "2",
            "--out", str(out))
    assert r.returncode == 0, r.stderr
    report = json.loads(out.read_text())
    ids = {rep["identity"] for rep in report["reports"]}
    assert len(ids) >= 12
    assert report["summary"]["all_passed"] is True
    assert "verdict" in r.stderr


def test_suite_reports_are_byte_identical(tmp_path):
    args = ("suite", "--seed", "3", "--dims", "1,2", "--cases", "2")
    a = run(*args, "--out", str(tmp_path / "a.json"))
    b = run(*args, "--out", str(tmp_path / "b.json"), env={"HYPERMAT_THREADS": "1"})
    assert a.returncode == b.returncode == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_gen_cases_round_trip_through_verify(tmp_path):
    cases = tmp_path / "cases.json"
    g = run("gen-cases", "--seed", "11", "--dims", "2", "--cases", "1", "--out", str(cases))
    assert g.returncode == 0, g.stderr
    v = run("verify", str(cases), "--out", str(tmp_path / "verified.json"))
    assert v.returncode == 0, v.stderr
    s = run("suite", "--seed", "11", "--dims", "2", "--cases", "1",
            "--out", str(tmp_path / "suite.json"))
    assert s.returncode == 0, s.stderr
    verified = json.loads((tmp_path / "verified.json").read_text())
    suite = json.loads((tmp_path / "suite.json").read_text())
    assert [r["residual"] for r in verified["reports"]] == [r["residual"] for r in suite["reports"]]


def test_verify_reports_json_path_of_bad_case(tmp_path):
    doc = {"cases": [{"identity": "T1", "params": {"P": 0.5, "Q": 1.2}}]}
    r = run("verify", "-", stdin=json.dumps(doc))
    assert r.returncode == 2
    assert "/cases/0/params/R" in r.stderr


def test_csv_format_has_one_row_per_case():
    r = run("suite", "--dims", "1", "--cases", "1", "--identities", "T1,T3", "--format", "csv")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0].startswith("identity,seed,dim,")
    assert len(lines) == 3
