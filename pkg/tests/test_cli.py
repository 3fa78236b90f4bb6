"""Command-line behavior: exit codes, output contracts, determinism."""
import json
import subprocess
import sys

import pytest

from statnet.cli import main

CSV_HEADER = ("t,phi,p0,p1,alpha_sq,beta_sq,energy,step_overlap,"
              "deviation_from_closed_form")


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- check -------------------------------------------------------------------

def test_check_fig1(capsys):
    code, out, _ = run_cli(["check", "--network", "fig1"], capsys)
    assert code == 0
    assert "solutions with all pins: 1" in out
    assert "solutions without output pins: 2" in out
    assert "drive node: h" in out


def test_check_reports_gate_subspaces(capsys):
    _, out, _ = run_cli(["check", "--network", "fig1"], capsys)
    assert "subspace dim: 4 of 16" in out  # two-in two-out invertible gate
    assert "subspace dim: 2 of 4" in out   # the inverting link


def test_check_dump_json(capsys):
    code, out, _ = run_cli(["check", "--network", "fig1", "--dump"], capsys)
    assert code == 0
    dump = json.loads(out)
    assert sum(dump["network_mask"]) == 1
    assert sum(dump["network_mask_no_output_pins"]) == 2
    assert len(dump["hamiltonian"]) == 256


def test_check_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.net"
    bad.write_text("nodes a\nfix a=2\n")
    code, _, err = run_cli(["check", "--network", str(bad)], capsys)
    assert code == 2
    assert "line 2" in err


def test_check_missing_file(capsys):
    code, _, err = run_cli(["check", "--network", "/no/such/file"], capsys)
    assert code == 2


# --- solve-brute -------------------------------------------------------------

def test_solve_brute_fig1(capsys):
    code, out, _ = run_cli(["solve-brute", "--network", "fig1"], capsys)
    assert code == 0
    assert out == "11101011\n"


def test_solve_brute_unsat(capsys):
    code, out, _ = run_cli(["solve-brute", "--network", "fig1-unsat"], capsys)
    assert code == 1
    assert out == "(none)\n"


def test_solve_brute_nodes_only(tmp_path, capsys):
    f = tmp_path / "free.net"
    f.write_text("nodes a b\n")
    code, out, _ = run_cli(["solve-brute", "--network", str(f)], capsys)
    assert code == 0
    assert out.split() == ["00", "01", "10", "11"]


# --- simulate ----------------------------------------------------------------

def test_simulate_link_csv_contract(capsys):
    code, out, _ = run_cli(["simulate-link", "--dt", "0.01"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 102  # header + 101 grid points
    for line in lines[1:]:
        assert len(line.split(",")) == 9


def test_simulate_link_deviation_small(capsys):
    _, out, _ = run_cli(["simulate-link", "--dt", "0.001"], capsys)
    devs = [float(line.split(",")[-1]) for line in out.strip().split("\n")[1:]]
    assert max(devs) < 1e-9


def test_simulate_link_deterministic(capsys):
    _, out1, _ = run_cli(["simulate-link", "--dt", "0.01"], capsys)
    _, out2, _ = run_cli(["simulate-link", "--dt", "0.01"], capsys)
    assert out1 == out2


def test_simulate_link_out_file(tmp_path, capsys):
    target = tmp_path / "trace.csv"
    code, out, _ = run_cli(["simulate-link", "--dt", "0.01",
                            "--out", str(target)], capsys)
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith(CSV_HEADER)
    assert "\r" not in text


def test_simulate_triplet_drive_choices_byte_identical(capsys):
    outs = {}
    for drive in ("p1", "p2", "both"):
        _, out, _ = run_cli(["simulate-triplet", "--dt", "0.01",
                             "--drive", drive], capsys)
        outs[drive] = out
    assert outs["p1"] == outs["p2"] == outs["both"]


def test_simulate_triplet_deviation_small(capsys):
    _, out, _ = run_cli(["simulate-triplet", "--dt", "0.001"], capsys)
    devs = [float(line.split(",")[-1]) for line in out.strip().split("\n")[1:]]
    assert max(devs) < 1e-9


def test_simulate_triplet_constant_when_undriven(capsys):
    _, out, _ = run_cli(["simulate-triplet", "--dt", "0.1",
                         "--phi-final", "0"], capsys)
    lines = out.strip().split("\n")[1:]
    p1_values = [float(line.split(",")[3]) for line in lines]
    assert max(p1_values) - min(p1_values) < 1e-12


# --- run ---------------------------------------------------------------------

def test_run_fig1(capsys):
    code, out, _ = run_cli(["run", "--network", "fig1", "--shots", "10",
                            "--seed", "7"], capsys)
    assert code == 0
    result = json.loads(out)
    assert result["decision"] == "satisfiable"
    assert set(result["samples"]) == {"11101011"}


def test_run_unsat(capsys):
    code, out, _ = run_cli(["run", "--network", "fig1-unsat",
                            "--shots", "10", "--seed", "7"], capsys)
    assert code == 1
    assert json.loads(out)["decision"] == "unsatisfiable"


def test_run_byte_deterministic(capsys):
    args = ["run", "--network", "fig1", "--shots", "5", "--seed", "3"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2


def test_run_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("STATNET_SEED", "11")
    _, out, _ = run_cli(["run", "--network", "fig1", "--shots", "2",
                         "--seed", "5"], capsys)
    assert json.loads(out)["seed"] == 11


def test_run_bad_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("STATNET_SEED", "not-a-number")
    code, _, err = run_cli(["run", "--network", "fig1"], capsys)
    assert code == 2
    assert "STATNET_SEED" in err


# --- argument handling -------------------------------------------------------

def test_unknown_command_exit_code(capsys):
    assert main(["frobnicate"]) == 2


def test_bad_flag_value_exit_code(capsys):
    assert main(["run", "--shots", "many"]) == 2


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "statnet.cli", "solve-brute",
                           "--network", "fig1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "11101011\n"
