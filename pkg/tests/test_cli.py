import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose

import lorentzpol as lp
from lorentzpol.cli import main

GOLDEN = Path(__file__).parent / "golden"
LN2_TEXT = "0.6931471805599453"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_measurements(tmp_path, matrix, name="meas.json", intensity=1.0):
    ms = lp.simulate_measurements(matrix, intensity)
    path = tmp_path / name
    path.write_text(ms.to_json() + "\n")
    return path


def test_simulate_boost_values(capsys):
    code, out, err = run_cli(capsys, "simulate", "--boost", "3", "--beta", LN2_TEXT,
                             "--intensity", "1")
    assert code == 0 and err == ""
    data = json.loads(out)
    assert_allclose(data["outputs"]["F"], [1.25, 0, 0, 0.75], atol=1e-12)
    assert_allclose(data["outputs"]["C"], [2, 0, 0, 2], atol=1e-12)


def test_simulate_identity_echoes_probes(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--matrix", "identity")
    assert code == 0
    data = json.loads(out)
    assert data["outputs"]["A"] == [1, 1, 0, 0]


def test_simulate_deterministic_bytes(capsys):
    argv = ("simulate", "--boost", "3", "--beta", "0.9", "--noise", "0.01", "--seed", "7")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


@pytest.mark.parametrize("argv, code", [
    (("simulate", "--intensity", "0", "--matrix", "identity"), 3),
    (("simulate", "--intensity", "-2", "--matrix", "identity"), 3),
    (("simulate", "--boost", "5", "--beta", "1"), 2),
    (("simulate", "--boost", "3"), 2),                       # missing --beta
    (("simulate",), 2),                                      # no element
    (("simulate", "--boost", "3", "--beta", "1", "--matrix", "identity"), 2),
    (("simulate", "--quaternion", "1", "1", "0", "0"), 2),   # not unit norm
    (("simulate", "--matrix", "1", "2", "3"), 2),            # wrong count
    (("simulate", "--matrix", "identity", "--noise", "-1"), 2),
])
def test_simulate_error_exit_codes(capsys, argv, code):
    got, out, err = run_cli(capsys, *argv)
    assert got == code
    assert out == ""


def test_simulate_qparam_round_trip(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--qparam", "0", "0", "-0.3333333333333333")
    assert code == 0
    data = json.loads(out)
    assert_allclose(data["outputs"]["F"], [1.25, 0, 0, 0.75], atol=1e-12)


def test_recover_raw(tmp_path, capsys):
    path = write_measurements(tmp_path, lp.boost_mueller(3, np.log(2.0)))
    code, out, _ = run_cli(capsys, "recover", str(path), "--model", "raw")
    assert code == 0
    data = json.loads(out)
    assert list(data) == ["matrix"]
    assert_allclose(data["matrix"], lp.boost_mueller(3, np.log(2.0)), atol=1e-12)


def test_recover_rotation_identity(tmp_path, capsys):
    path = write_measurements(tmp_path, np.eye(4))
    code, out, _ = run_cli(capsys, "recover", str(path), "--model", "rotation")
    assert code == 0
    data = json.loads(out)
    assert data["quaternion"] == [1, 0, 0, 0]
    assert data["lorentz_residuals"] == [0, 0, 0, 0]


def test_recover_lorentz_schema_and_values(tmp_path, capsys):
    path = write_measurements(tmp_path, lp.boost_mueller(3, np.log(2.0)))
    code, out, _ = run_cli(capsys, "recover", str(path), "--model", "lorentz")
    assert code == 0
    data = json.loads(out)
    assert list(data) == [
        "delta", "M", "N", "k", "q", "round_trip_max_dev", "lorentz_residuals",
    ]
    assert_allclose(data["q"]["re"], [0, 0, -1.0 / 3.0], atol=1e-12)
    assert_allclose(data["q"]["im"], [0, 0, 0], atol=1e-12)
    assert data["round_trip_max_dev"] < 1e-10


def test_recover_auto_classifies(tmp_path, capsys):
    path = write_measurements(tmp_path, np.eye(4))
    code, out, _ = run_cli(capsys, "recover", str(path), "--model", "auto")
    assert code == 0
    data = json.loads(out)
    assert data["classification"] == "rotation"
    assert data["quaternion"] == [1, 0, 0, 0]

    path = write_measurements(tmp_path, lp.boost_mueller(3, 0.7), name="boost.json")
    code, out, _ = run_cli(capsys, "recover", str(path), "--model", "auto")
    assert code == 0
    assert json.loads(out)["classification"] == "lorentz"

    path = write_measurements(tmp_path, 2.0 * np.eye(4), name="scaled.json")
    code, out, _ = run_cli(capsys, "recover", str(path), "--model", "auto")
    assert code == 0
    data = json.loads(out)
    assert data["classification"] == "not-lorentzian"
    assert "quaternion" not in data and "delta" not in data
    assert data["round_trip_max_dev"] == 1  # rebuild cannot represent the scaling


def test_recover_lorentz_rejects_non_lorentzian(tmp_path, capsys):
    path = write_measurements(tmp_path, 2.0 * np.eye(4))
    code, out, err = run_cli(capsys, "recover", str(path), "--model", "lorentz")
    assert code == 5
    assert out == ""
    report = json.loads(err)
    assert report["lorentz_residuals"] == [3, 0, 0, 0]


def test_recover_rotation_rejects_boost(tmp_path, capsys):
    path = write_measurements(tmp_path, lp.boost_mueller(3, 0.7))
    code, out, err = run_cli(capsys, "recover", str(path), "--model", "rotation")
    assert code == 5
    assert "NotRotationType" in json.loads(err)["error"]


def test_recover_degenerate_trace_partial_report(tmp_path, capsys):
    path = write_measurements(tmp_path, np.diag([1.0, -1.0, -1.0, 1.0]))
    code, out, err = run_cli(capsys, "recover", str(path), "--model", "lorentz")
    assert code == 4
    assert out == ""
    assert "nan" not in err.lower()
    report = json.loads(err)
    assert "DegenerateTrace" in report["error"]
    assert_allclose(report["matrix"], np.diag([1.0, -1.0, -1.0, 1.0]))


def test_recover_noisy_rotation_with_loose_tol(tmp_path, capsys):
    ms = lp.simulate_measurements(lp.rotation_mueller(2, 0.8), 1.0, lp.NoiseSpec(1e-3, 42))
    path = tmp_path / "noisy.json"
    path.write_text(ms.to_json() + "\n")
    # strict tolerance refuses the noisy block
    code, _, _ = run_cli(capsys, "recover", str(path), "--model", "rotation")
    assert code == 5
    # an explicit loose tolerance lets the extraction run and reports the damage
    code, out, err = run_cli(capsys, "recover", str(path), "--model", "auto", "--tol", "0.05")
    assert code == 0, err
    data = json.loads(out)
    assert data["classification"] == "rotation"
    assert_allclose(data["quaternion"], [np.cos(0.4), 0, np.sin(0.4), 0], atol=5e-3)
    assert 1e-5 < data["round_trip_max_dev"] < 1e-2


def test_recover_near_pi_rotation_exit_code(tmp_path, capsys):
    path = write_measurements(tmp_path, lp.rotation_mueller(1, np.pi))
    code, _, err = run_cli(capsys, "recover", str(path), "--model", "rotation")
    assert code == 4
    assert "NearPiRotation" in json.loads(err)["error"]


def test_recover_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(capsys, "recover", str(bad))[0] == 2
    assert run_cli(capsys, "recover", str(tmp_path / "missing.json"))[0] == 2
    empty = tmp_path / "empty.json"
    empty.write_text('{"intensity": 1.0}')
    assert run_cli(capsys, "recover", str(empty))[0] == 2


def test_classify_exit_codes(tmp_path, capsys):
    path = write_measurements(tmp_path, np.eye(4))
    code, out, _ = run_cli(capsys, "classify", str(path))
    assert code == 1 and out.startswith("rotation ")

    path = write_measurements(tmp_path, lp.boost_mueller(2, 0.4), name="b.json")
    code, out, _ = run_cli(capsys, "classify", str(path))
    assert code == 0 and out.startswith("lorentz ")

    path = write_measurements(tmp_path, 2.0 * np.eye(4), name="s.json")
    code, out, _ = run_cli(capsys, "classify", str(path))
    assert code == 5 and out.startswith("not-lorentzian ")


def test_batch_recovery(tmp_path, capsys):
    write_measurements(tmp_path, lp.boost_mueller(3, 0.5), name="one.json")
    write_measurements(tmp_path, np.eye(4), name="two.json")
    code, out, err = run_cli(capsys, "recover", "--batch", str(tmp_path), "--model", "auto")
    assert code == 0, err
    assert "one.json: ok" in out and "two.json: ok" in out
    for name in ("one", "two"):
        data = json.loads((tmp_path / f"{name}.recovery.json").read_text())
        assert "classification" in data
    # outputs are not reprocessed on a second run
    code, out, _ = run_cli(capsys, "recover", "--batch", str(tmp_path), "--model", "auto")
    assert code == 0
    assert "recovery.json: ok" not in out


def test_batch_propagates_worst_exit_code(tmp_path, capsys):
    write_measurements(tmp_path, lp.boost_mueller(3, 0.5), name="good.json")
    write_measurements(tmp_path, np.diag([1.0, -1.0, -1.0, 1.0]), name="degenerate.json")
    code, out, err = run_cli(capsys, "recover", "--batch", str(tmp_path), "--model", "lorentz")
    assert code == 4
    assert "degenerate.json: failed (exit 4)" in out


def test_pipe_composability():
    simulate = subprocess.run(
        [sys.executable, "-m", "lorentzpol", "simulate", "--boost", "3", "--beta", LN2_TEXT],
        capture_output=True, check=True,
    )
    recover = subprocess.run(
        [sys.executable, "-m", "lorentzpol", "recover", "--model", "auto"],
        input=simulate.stdout, capture_output=True,
    )
    assert recover.returncode == 0, recover.stderr
    data = json.loads(recover.stdout)
    assert data["classification"] == "lorentz"
    assert_allclose(data["q"]["re"], [0, 0, -1.0 / 3.0], atol=1e-12)


def test_golden_simulate_bytes():
    result = subprocess.run(
        [sys.executable, "-m", "lorentzpol", "simulate", "--boost", "3", "--beta", LN2_TEXT],
        capture_output=True, check=True,
    )
    assert result.stdout == (GOLDEN / "simulate_boost3_ln2.json").read_bytes()


def test_golden_recover_bytes():
    result = subprocess.run(
        [sys.executable, "-m", "lorentzpol", "recover", "--model", "lorentz",
         str(GOLDEN / "simulate_boost3_ln2.json")],
        capture_output=True, check=True,
    )
    assert result.stdout == (GOLDEN / "recover_boost3_ln2.json").read_bytes()
