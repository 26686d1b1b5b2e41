import json
import os
import subprocess
import sys

import pytest

from fermiorder.cli import main
from fermiorder.fock import state_to_json_str
from fermiorder.states import spin_singlet_state

ST1_SPEC = "0.5: a+ c+; 0.5: a+ d+; 0.5: b+ c+; 0.5: b+ d+"
ST3_SPEC = "0.5: ; 0.5: b+; 0.5: a+; 0.5: a+ b+"


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("FERMIORDER_TOL", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "fermiorder.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_examples_all_pass():
    proc = run_cli("examples")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
    assert proc.stdout.strip().endswith("checks passed")


def test_examples_json_shape():
    proc = run_cli("examples", "--format", "json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["passed"] is True
    names = {c["name"] for c in payload["checks"]}
    assert "parity-violating-state" in names
    ssr_checks = [c for c in payload["checks"] if c["check"] == "ssr"]
    assert any(c["actual"] is False for c in ssr_checks)


def test_sweep_deterministic_bytes():
    args = ("theorem-sweep", "--modes", "1,1", "--trials", "5", "--seed", "12", "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_sweep_csv_columns():
    proc = run_cli("theorem-sweep", "--modes", "2,2", "--trials", "3", "--format", "csv")
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "seed,n,m,ordering,maxEntryDiff,traceDistance,ssr"
    assert len(lines) == 1 + 6


def test_sweep_rejects_bad_modes():
    proc = run_cli("theorem-sweep", "--modes", "banana")
    assert proc.returncode == 2


def test_scan_parity_witness_reports_two_classes():
    proc = run_cli(
        "ordering-scan", "--kept", "a", "--traced", "b", "--state", ST3_SPEC, "--format", "json"
    )
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(proc.stdout)
    assert payload["ssr"] is False
    assert len(payload["classes"]) == 2


def test_scan_random_even_state_passes():
    proc = run_cli("ordering-scan", "--modes", "2,2", "--sector", "even", "--seed", "5")
    assert proc.returncode == 0
    assert "ordering classes:" in proc.stdout


def test_scan_size_limit_exit_code():
    proc = run_cli("ordering-scan", "--modes", "5,4")
    assert proc.returncode == 2
    assert "exceeds" in proc.stderr


def test_negativity_inline_state():
    proc = run_cli(
        "negativity",
        "--state", ST1_SPEC,
        "--kept", "a,b",
        "--traced", "c,d",
        "--ordering", "a,d,b,c",
        "--format", "json",
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert abs(payload["value"] - 0.5) < 1e-9
    assert payload["ordering"] == ["a", "d", "b", "c"]
    assert payload["bipartition"]["kept"] == ["a", "b"]


def test_negativity_requires_ordering():
    proc = run_cli("negativity", "--state", ST1_SPEC, "--kept", "a,b", "--traced", "c,d")
    assert proc.returncode == 2


def test_negativity_from_json_file(tmp_path):
    state = spin_singlet_state()
    path = tmp_path / "singlet.json"
    path.write_text(state_to_json_str(state), encoding="utf-8")
    proc = run_cli(
        "negativity",
        "--state-json", str(path),
        "--kept", "uA,dA",
        "--traced", "uR,dR",
        "--ordering", "uA,dA,uR,dR",
    )
    assert proc.returncode == 0
    assert "negativity = 0.4999" in proc.stdout
    assert "ssr = True" in proc.stdout


def test_tolerance_env_var_validation():
    proc = run_cli("examples", env_extra={"FERMIORDER_TOL": "not-a-number"})
    assert proc.returncode == 2
    proc = run_cli("examples", env_extra={"FERMIORDER_TOL": "2.0"})
    assert proc.returncode == 2


def test_tolerance_env_var_applies():
    # an absurdly loose tolerance still passes; a crankily tight one is honored
    proc = run_cli(
        "theorem-sweep", "--modes", "1,1", "--trials", "2",
        env_extra={"FERMIORDER_TOL": "1e-3"},
    )
    assert proc.returncode == 0
    assert "1e-3" in proc.stdout or "0.001" in proc.stdout


def test_output_file_written(tmp_path):
    target = tmp_path / "report.json"
    proc = run_cli(
        "theorem-sweep", "--modes", "1,1", "--trials", "2", "--format", "json",
        "--output", str(target),
    )
    assert proc.returncode == 0
    assert proc.stdout == ""
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["passed"] is True


def test_main_callable_directly():
    assert main(["theorem-sweep", "--modes", "1,1", "--trials", "1"]) == 0


def test_state_spec_parse_error_exit_code():
    proc = run_cli(
        "negativity", "--state", "0.5 a+", "--kept", "a", "--traced", "b", "--ordering", "a,b"
    )
    assert proc.returncode == 2
    assert "coeff" in proc.stderr or "missing" in proc.stderr
