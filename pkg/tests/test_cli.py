"""End-to-end tests for the chebvcc command-line interface.

Commands run in-process through main(argv), which returns the exit code and
prints through normal streams, so capsys sees everything.
"""

from __future__ import annotations

import shutil

import pytest

from chebvcc.cli import main

from conftest import DATA_DIR, fixture_path


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_help_lists_subcommands(capsys):
    code, out, _ = run_cli(capsys, ["--help"])
    assert code == 0
    assert "Usage:" in out
    for name in ("energy", "scan", "qsvt-verify"):
        assert name in out


def test_energy_row_for_degree_one_chebyshev(capsys):
    code, out, _ = run_cli(capsys, [
        "energy", "--fixture", fixture_path("h2", "0.74"),
        "--method", "cvcc", "--degree", "1"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "method,d,energy,e_hf,e_fci,iterations,converged"
    # two electrons: the degree-1 state spans the full CI space
    assert lines[1].startswith(
        "cvcc,1,-1.13728383449,-1.1167593074,-1.13728383449,")
    assert lines[1].endswith(",true")


def test_energy_hf_has_empty_degree_field(capsys):
    code, out, _ = run_cli(capsys, [
        "energy", "--fixture", fixture_path("h2", "0.74"), "--method", "hf"])
    assert code == 0
    fields = out.splitlines()[1].split(",")
    assert fields[0] == "hf" and fields[1] == ""
    assert fields[2] == fields[3]
    assert fields[5] == "0" and fields[6] == "true"


def test_energy_circuit_method_reevaluates_through_circuit(capsys):
    code, out, _ = run_cli(capsys, [
        "energy", "--fixture", fixture_path("h2", "0.74"),
        "--method", "hcvcc-circuit", "--degree", "2"])
    assert code == 0
    fields = out.splitlines()[1].split(",")
    assert fields[0] == "hcvcc-circuit" and fields[1] == "2"
    energy, e_hf, e_fci = map(float, fields[2:5])
    assert e_fci - 1e-9 <= energy <= e_hf
    assert energy == pytest.approx(e_fci, abs=1e-8)


def test_energy_unconverged_exits_two(capsys):
    code, out, _ = run_cli(capsys, [
        "energy", "--fixture", fixture_path("h4", "1.00"),
        "--method", "cvcc", "--degree", "2", "--max-iter", "1"])
    assert code == 2
    assert out.splitlines()[1].endswith(",false")


def test_energy_missing_degree_errors(capsys):
    code, _, err = run_cli(capsys, [
        "energy", "--fixture", fixture_path("h2", "0.74"), "--method", "cvcc"])
    assert code == 1
    assert "error: method cvcc requires --degree" in err


def test_energy_unknown_method_errors(capsys):
    code, _, err = run_cli(capsys, [
        "energy", "--fixture", fixture_path("h2", "0.74"), "--method", "vqe"])
    assert code == 1
    assert "error: unknown method 'vqe'; choose from" in err


def test_energy_missing_fixture_errors(capsys):
    code, _, err = run_cli(capsys, [
        "energy", "--fixture", "no_such_0.74.fcidump", "--method", "hf"])
    assert code == 1
    assert "error: fixture not found: no_such_0.74.fcidump" in err


def test_fixture_resolution_via_environment(capsys, monkeypatch):
    monkeypatch.setenv("CHEBVCC_DATA_DIR", str(DATA_DIR))
    code, out, _ = run_cli(capsys, [
        "energy", "--fixture", "h2_0.74.fcidump", "--method", "hf"])
    assert code == 0
    assert out.splitlines()[1].startswith("hf,")


def test_scan_writes_csv_and_summary(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CHEBVCC_DATA_DIR", str(DATA_DIR))
    out_csv = tmp_path / "h2_scan.csv"
    code, out, err = run_cli(capsys, [
        "scan", "--fixtures", "h2_*.fcidump", "--method", "hf",
        "--method", "cvcc:1", "--output", str(out_csv)])
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "R,method,d,energy,e_fci,e_exact_vcc,error"
    assert len(lines) == 1 + 5 * 2
    summary = out.splitlines()
    assert summary[0] == "method,max_abs_error"
    assert summary[1].startswith("C^d(d=1),")
    assert summary[2].startswith("HF,")
    assert float(summary[1].split(",")[1]) < float(summary[2].split(",")[1])
    assert err.count("R=") == 10


def test_scan_reports_failures_and_exits_two(capsys, tmp_path):
    shutil.copy(fixture_path("h2", "0.74"), tmp_path / "h2_0.74.fcidump")
    (tmp_path / "h2_1.50.fcidump").write_text("not integrals\n")
    out_csv = tmp_path / "scan.csv"
    code, out, err = run_cli(capsys, [
        "scan", "--fixtures", str(tmp_path / "h2_*.fcidump"),
        "--method", "hf", "--output", str(out_csv)])
    assert code == 2
    assert "FAILED" in err and "h2_1.50.fcidump" in err
    assert len(out_csv.read_text().splitlines()) == 2


def test_scan_without_matches_errors(capsys, tmp_path):
    code, _, err = run_cli(capsys, [
        "scan", "--fixtures", str(tmp_path / "*.fcidump"), "--method", "hf",
        "--output", str(tmp_path / "scan.csv")])
    assert code == 1
    assert "no fixtures match" in err


def test_qsvt_verify_reports_residuals(capsys):
    code, out, _ = run_cli(capsys, [
        "qsvt-verify", "--fixture", fixture_path("h2", "0.74"),
        "--degree", "3", "--seed", "11"])
    assert code == 0
    table = dict(line.split(",", 1) for line in out.splitlines())
    assert table["pauli_terms"] == "12"
    assert table["subnormalization"] == "0.0947300584828"
    assert float(table["block_residual"]) <= 1e-10
    for mode in ("per-term", "even-odd"):
        assert float(table[f"{mode}_state_distance"]) <= 1e-7
        assert 0.0 < float(table[f"{mode}_success_amplitude"]) <= 1.0


def test_qsvt_verify_rejects_large_fixture(capsys):
    code, _, err = run_cli(capsys, [
        "qsvt-verify", "--fixture", fixture_path("n2", "1.05")])
    assert code == 1
    assert "8-qubit circuit cap" in err


def test_qsvt_verify_rejects_negative_degree(capsys):
    code, _, err = run_cli(capsys, [
        "qsvt-verify", "--fixture", fixture_path("h2", "0.74"),
        "--degree", "-1"])
    assert code == 1
    assert "degree must be nonnegative" in err
