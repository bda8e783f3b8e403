import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from lorentzcanon.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def fx(fixtures_dir, name):
    return fixtures_dir / name


def test_analyze_example1(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", "--input", fx(fixtures_dir, "example1_omega.json"))
    assert code == 0
    rep = json.loads(out)
    assert rep["class"] == "Ic" and rep["case_id"] == "(i)(A)"
    np.testing.assert_allclose(rep["eigenvalues"], [0.921, 0.503, 0.366, 0.109], atol=2e-3)
    assert rep["physical_canonical_state"] is False
    assert rep["diagnostics"]["surface"]["max_residual"] < 1e-9


def test_analyze_example4(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", "--input", fx(fixtures_dir, "example4_omega.json"))
    rep = json.loads(out)
    assert code == 0 and rep["class"] == "IIc"
    assert rep["canonical"]["s0"] == pytest.approx(0.5, abs=1e-6)
    assert rep["canonical"]["s1"] == pytest.approx(0.7071, abs=1e-4)


def test_analyze_state_fixture_has_local_factor(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", "--input", fx(fixtures_dir, "example4_rho.json"))
    rep = json.loads(out)
    assert code == 0 and rep["class"] == "IIc"
    assert rep["diagnostics"]["factor_residual"] < 1e-9
    assert rep["diagnostics"]["L_A_is_lorentz"]


def test_analyze_mixed_point_ellipsoid(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", "--input", fx(fixtures_dir, "maximally_mixed_rho.json"))
    rep = json.loads(out)
    assert code == 0
    assert rep["ellipsoid"]["semi_axes"] == [0.0, 0.0, 0.0]
    assert rep["ellipsoid"]["center"] == [0.0, 0.0, 0.0]


def test_report_roundtrips_bit_exact(tmp_path, capsys, fixtures_dir):
    out = tmp_path / "r.json"
    assert run(capsys, "analyze", "--input", fx(fixtures_dir, "example2_omega.json"), "--out", out)[0] == 0
    rep = json.loads(out.read_text())
    assert json.loads(json.dumps(rep)) == rep
    assert out.read_text() == json.dumps(rep, indent=2) + "\n"


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "analyze", "--input", tmp_path / "missing.json")[0] == 1
    assert run(capsys, "analyze")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"re": np.diag([0.6, 0.3, 0.2, -0.1]).tolist()}))
    assert run(capsys, "analyze", "--input", bad)[0] == 2
    unphysical = tmp_path / "unphysical.json"
    unphysical.write_text(json.dumps({"lambda": np.diag([1.0, 0.739, 0.630, 0.344]).tolist()}))
    assert run(capsys, "analyze", "--input", unphysical)[0] == 2
    neg = tmp_path / "neg.json"
    neg.write_text(json.dumps({"omega": np.diag([1.0, -0.2, -0.3, 0.1]).tolist()}))
    code, _, err = run(capsys, "analyze", "--input", neg)
    assert code == 3 and "NegativeEigenvalue" in err


def test_no_partial_file_on_failure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"re": np.diag([0.6, 0.3, 0.2, -0.1]).tolist()}))
    out = tmp_path / "out.json"
    assert run(capsys, "analyze", "--input", bad, "--out", out)[0] == 2
    assert not out.exists()


@pytest.mark.parametrize(
    "k,window,gaps,roots",
    [(1, (-0.2, 1.2), 3, 4), (2, (-0.2, 1.2), 2, 3), (3, (-0.2, 1.0), 1, 2), (4, (-0.1, 0.2), 1, 1)],
)
def test_hprofile(tmp_path, capsys, fixtures_dir, k, window, gaps, roots):
    out = tmp_path / f"h{k}.csv"
    code = run(capsys, "hprofile", "--input", fx(fixtures_dir, f"example{k}_omega.json"),
               "--lambda-min", window[0], "--lambda-max", window[1], "--samples", 1000, "--out", out)[0]
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["lambda", "h", "is_gap"]
    assert sum(r["is_gap"] == "1" for r in rows) == gaps
    side = json.loads(out.with_suffix(".json").read_text())
    assert side["distinct_roots"] == roots
    assert side["double_root"] is (k == 4)
    if k == 3:
        assert side["phi1_roots"] == pytest.approx([0.264, 0.078])
        assert side["gaps"] == pytest.approx([0.183])


def test_ellipsoid(tmp_path, capsys, fixtures_dir):
    expected = {1: (0.739, 0.630, 0.344), 2: (0.705, 0.492, 0.219)}
    for k, axes in expected.items():
        out = tmp_path / f"e{k}.csv"
        assert run(capsys, "ellipsoid", "--input", fx(fixtures_dir, f"example{k}_omega.json"), "--out", out)[0] == 0
        side = json.loads(out.with_suffix(".json").read_text())
        np.testing.assert_allclose(side["semi_axes"], axes, atol=2e-3)
    out = tmp_path / "e4.csv"
    run(capsys, "ellipsoid", "--input", fx(fixtures_dir, "example4_omega.json"), "--out", out, "--samples", 50)
    side = json.loads(out.with_suffix(".json").read_text())
    assert side["center"] == pytest.approx([0, 0, 0.5])
    pts = np.loadtxt(out, delimiter=",", skiprows=1)
    assert pts.shape == (50, 3)


def test_steer(capsys, fixtures_dir):
    code, out, _ = run(capsys, "steer", "--input", fx(fixtures_dir, "bell_phi_plus_rho.json"), "--direction", 0, 0, 1)
    res = json.loads(out)
    assert code == 0 and res["q"] == pytest.approx([0, 0, 1]) and res["born_probability"] == pytest.approx(0.5)
    code, out, _ = run(capsys, "steer", "--input", fx(fixtures_dir, "maximally_mixed_rho.json"),
                       "--direction", 0.6, 0.0, 0.8)
    assert json.loads(out)["q"] == [0.0, 0.0, 0.0]
    code, out, _ = run(capsys, "steer", "--input", fx(fixtures_dir, "example1_omega.json"), "--canonical",
                       "--direction", 1, 0, 0)
    assert json.loads(out)["q"] == pytest.approx([0.739, 0, 0], abs=2e-3)


def test_steer_direction_checks(capsys, fixtures_dir):
    bell = fx(fixtures_dir, "bell_phi_plus_rho.json")
    assert run(capsys, "steer", "--input", bell, "--direction", 1, 1, 0)[0] == 2
    code, out, _ = run(capsys, "steer", "--input", bell, "--direction", 0, 0, 1 + 5e-7)
    assert code == 0 and json.loads(out)["q"] == pytest.approx([0, 0, 1])
    assert run(capsys, "steer", "--input", fx(fixtures_dir, "example1_omega.json"), "--direction", 1, 0, 0)[0] == 2


def test_batch(tmp_path, capsys, fixtures_dir):
    assert run(capsys, "batch", "--input", fixtures_dir, "--out", tmp_path / "b")[0] == 0
    summary = json.loads((tmp_path / "b" / "summary.json").read_text())
    assert summary["example4_omega.json"]["class"] == "IIc"
    assert len(list((tmp_path / "b").glob("*.report.json"))) == len(summary)


def test_determinism(tmp_path, capsys, fixtures_dir):
    outputs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        run(capsys, "analyze", "--input", fx(fixtures_dir, "example3_rho.json"), "--seed", 7, "--out", out)
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_module_entry_point(fixtures_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "lorentzcanon", "analyze", "--input", str(fixtures_dir / "example2_omega.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["case_id"] == "(ii)(A)"
