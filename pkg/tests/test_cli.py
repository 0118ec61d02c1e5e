"""End-to-end CLI behavior via python -m fracdyn."""
from __future__ import annotations

import json
import subprocess
import sys

import pytest


def run_cli(*args: str, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "fracdyn", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def test_simulate_defaults(tmp_path):
    out = tmp_path / "sim.csv"
    result = run_cli("simulate", "--out", str(out))
    assert result.returncode == 0, result.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x,y"
    assert len(lines) == 322  # header + 321 nodes
    assert lines[1] == "0,5,4"


def test_simulate_values_round_trip_exactly(tmp_path):
    out = tmp_path / "sim.csv"
    result = run_cli("simulate", "--out", str(out), "--set", "steps=10")
    assert result.returncode == 0, result.stderr
    lines = out.read_text().splitlines()
    assert len(lines) == 12
    for line in lines[1:]:
        for field in line.split(","):
            value = float(field)
            assert repr(value) in (field, field + ".0")


def test_phase_output(tmp_path):
    out = tmp_path / "phase.csv"
    result = run_cli("phase", "--out", str(out), "--set", "steps=10")
    assert result.returncode == 0, result.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 12
    assert lines[1] == "5,4"


def test_converge_output(tmp_path):
    out = tmp_path / "table.csv"
    result = run_cli(
        "converge", "--out", str(out), "--set", "step_counts=[10,20,40]"
    )
    assert result.returncode == 0, result.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "N,tau,xi_x,xi_y,p_x,p_y"
    assert len(lines) == 4
    first = lines[1].split(",")
    assert first[0] == "10"
    assert first[1] == "0.1"
    assert first[4] == "" and first[5] == ""  # no orders in the first row
    second = lines[2].split(",")
    assert second[0] == "20"
    assert second[4] != "" and second[5] != ""


def test_config_file_and_out_override(tmp_path):
    config_path = tmp_path / "run.json"
    config_path.write_text(
        json.dumps({"steps": 10, "output_path": str(tmp_path / "ignored.csv")})
    )
    out = tmp_path / "actual.csv"
    result = run_cli("simulate", "--config", str(config_path), "--out", str(out))
    assert result.returncode == 0, result.stderr
    assert out.exists()
    assert not (tmp_path / "ignored.csv").exists()


def test_output_path_from_config(tmp_path):
    config_path = tmp_path / "run.json"
    target = tmp_path / "from-config.csv"
    config_path.write_text(
        json.dumps({"steps": 10, "output_path": str(target)})
    )
    result = run_cli("simulate", "--config", str(config_path))
    assert result.returncode == 0, result.stderr
    assert target.exists()


def test_set_overrides_config_file(tmp_path):
    config_path = tmp_path / "run.json"
    config_path.write_text(json.dumps({"steps": 50}))
    out = tmp_path / "sim.csv"
    result = run_cli(
        "simulate", "--config", str(config_path), "--out", str(out),
        "--set", "steps=10",
    )
    assert result.returncode == 0, result.stderr
    assert len(out.read_text().splitlines()) == 12


def test_byte_identical_reruns(tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    for out in (first, second):
        result = run_cli("simulate", "--out", str(out))
        assert result.returncode == 0, result.stderr
    assert first.read_bytes() == second.read_bytes()


def test_significant_digits(tmp_path):
    out = tmp_path / "sim.csv"
    result = run_cli("simulate", "--out", str(out))
    assert result.returncode == 0, result.stderr
    # generic interior values carry full float precision (>= 12 digits)
    line = out.read_text().splitlines()[2]
    _, x_text, y_text = line.split(",")
    for text in (x_text, y_text):
        digits = sum(ch.isdigit() for ch in text)
        assert digits >= 12


@pytest.mark.parametrize(
    "config_text,needle",
    [
        ('{"n": 1.5}', '"n"'),
        ('{"unknown_key": 3}', "unknown_key"),
        ("{broken", "JSON"),
    ],
)
def test_validation_errors_exit_one(tmp_path, config_text, needle):
    config_path = tmp_path / "bad.json"
    config_path.write_text(config_text)
    result = run_cli(
        "simulate", "--config", str(config_path), "--out", str(tmp_path / "x.csv")
    )
    assert result.returncode == 1
    assert needle in result.stderr


def test_missing_config_file_exits_one(tmp_path):
    result = run_cli(
        "simulate",
        "--config", str(tmp_path / "nope.json"),
        "--out", str(tmp_path / "x.csv"),
    )
    assert result.returncode == 1


def test_bad_override_exits_one(tmp_path):
    result = run_cli(
        "simulate", "--out", str(tmp_path / "x.csv"), "--set", "alpha1"
    )
    assert result.returncode == 1
    assert "alpha1" in result.stderr


def test_unknown_subcommand_exits_one(tmp_path):
    result = run_cli("render", "--out", str(tmp_path / "x.csv"))
    assert result.returncode == 1


def test_numerical_failure_exits_two(tmp_path):
    result = run_cli(
        "simulate",
        "--out", str(tmp_path / "x.csv"),
        "--set", "lambda=30", "--set", "horizon=50", "--set", "steps=100",
    )
    assert result.returncode == 2
    assert "step" in result.stderr
    assert "t = " in result.stderr
