import json
import subprocess
import sys

import numpy as np
import pytest

from qubitizer import cli
from qubitizer.circuit import read_qbc


@pytest.fixture
def spec_file(tmp_path):
    def write(**spec):
        path = tmp_path / f"{spec['kind']}.json"
        path.write_text(json.dumps(spec))
        return path

    return write


def _run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("query", ["hs", "be", "measure", "walk"])
def test_verify_toeplitz(capsys, spec_file, query):
    path = spec_file(kind="toeplitz_diag", n=3, m=8, weight=0.5)
    code, out, _ = _run(capsys, "verify", "--spec", path, "--query", query, "--t", 0.3, "--steps", 8)
    assert code == cli.EXIT_OK
    report = json.loads(out)
    assert report["passed"]
    assert report["checks"]["decomposition"]["deviation"] < 1e-10


def test_build_writes_round_tripping_circuit(capsys, spec_file, tmp_path):
    path = spec_file(kind="circulant", n=3, m=8)
    qbc = tmp_path / "out.qbc"
    code, out, _ = _run(capsys, "build", "--spec", path, "--query", "hs", "--t", 0.3, "--steps", 8, "--out", qbc)
    assert code == 0 and qbc.exists()
    report = json.loads(out)
    assert "resources" in report
    assert read_qbc(qbc).num_qubits == 3


def test_build_lcu_circulant_subnormalization(capsys, spec_file, tmp_path):
    path = spec_file(kind="circulant", n=1, m=8, variant="lcu")
    code, out, _ = _run(capsys, "build", "--spec", path, "--query", "be", "--out", tmp_path / "be.qbc")
    assert code == 0
    assert json.loads(out)["subnormalization"] == pytest.approx(2.0)


def test_build_walk_and_density_matrix(capsys, spec_file, tmp_path):
    psi = (np.random.default_rng(2).normal(size=8) + 0j)
    psi /= np.linalg.norm(psi)
    path = spec_file(kind="density_matrix", psi=[[v.real, v.imag] for v in psi])
    for query in ("be", "walk"):
        code, out, _ = _run(capsys, "verify", "--spec", path, "--query", query)
        assert code == 0
        assert json.loads(out)["passed"]


def test_tolerance_zero_is_rejected(capsys, spec_file):
    path = spec_file(kind="toeplitz_diag", n=3, m=8)
    code, _, err = _run(capsys, "verify", "--spec", path, "--tol", 0)
    assert code != 0
    assert json.loads(err)["error"] == "SpecError"


def test_verification_failure_exit_code(capsys, spec_file, monkeypatch):
    path = spec_file(kind="toeplitz_diag", n=3, m=8)
    real = cli.dense_oracle
    monkeypatch.setattr(cli, "dense_oracle", lambda spec: real(spec) + 1e-3)
    code, _, err = _run(capsys, "verify", "--spec", path)
    assert code == cli.EXIT_FAILED
    payload = json.loads(err)
    assert payload["error"] == "VerificationFailed" and payload["worst"]["check"] == "decomposition"


def test_spec_errors_exit_two(capsys, spec_file, tmp_path):
    code, _, err = _run(capsys, "build", "--spec", tmp_path / "missing.json")
    assert code == cli.EXIT_SPEC and "error" in json.loads(err)
    bad = spec_file(kind="toeplitz_diag", n=9, m=8)
    assert _run(capsys, "verify", "--spec", bad)[0] == cli.EXIT_SPEC
    unknown = spec_file(kind="banded", n=1, m=8)
    assert _run(capsys, "count", "--spec", unknown)[0] == cli.EXIT_SPEC


def test_count_sweep(capsys, tmp_path):
    csv = tmp_path / "counts.csv"
    code, out, _ = _run(capsys, "count", "--sweep", 128, "--out", csv)
    assert code == 0
    report = json.loads(out)
    assert report["mismatches"] == 0 and len(report["rows"]) == 128
    assert [a["phase_gates"] for a in report["adder_qft"]] == [1, 2, 3, 4, 5]
    lines = csv.read_text().splitlines()
    assert len(lines) == 129
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[4] == fields[8]


def test_count_adder_lcu(capsys, spec_file):
    path = spec_file(kind="circulant", n=3, m=8, variant="lcu")
    code, out, _ = _run(capsys, "count", "--spec", path)
    assert code == 0
    assert json.loads(out)["rows"][0]["LCU"]["measured"] == 2


def test_bounds_with_shots_and_groups(capsys, spec_file, tmp_path):
    path = spec_file(kind="terms", terms=["1.0 * X.Z", "0.5 * Z.X", "0.25 * s.sd + h.c."], groups=[[0, 1], [2]])
    report_path = tmp_path / "bounds.json"
    code, _, _ = _run(capsys, "bounds", "--spec", path, "--shots", 100_000, "--report", report_path)
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["holds"] and "trotter" in report
    assert [g["members"] for g in report["groups"]] == [[0, 1], [2]]
    assert all("exact" in g for g in report["groups"])
    assert len(report["monte_carlo"]) == 3
    assert all(mc["mean_within_6_sigma"] and mc["variance_within_10pct"] for mc in report["monte_carlo"])


def test_module_entry_point(tmp_path):
    spec = tmp_path / "t.json"
    spec.write_text('{"kind": "toeplitz_diag", "n": 1, "m": 4}')
    proc = subprocess.run([sys.executable, "-m", "qubitizer", "count", "--spec", str(spec)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rows"][0]["LCH"]["measured"] == 1
