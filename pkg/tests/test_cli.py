"""End-to-end tests of the command line interface."""

import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from opencurrents.cli import main
from opencurrents.dynamics import current_derivatives_at_zero, current_series
from opencurrents.bargmann import projector
from opencurrents.fileio import write_matrix_file
from opencurrents.figures import render_current_curve, render_q_curve
from opencurrents.hilbert import unit_circle
from opencurrents.presets import H1, V0


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


# ------------------------------------------------------------------- table1


def test_table1_prints_six_configurations(capsys):
    assert main(["table1"]) == 0
    out = capsys.readouterr().out
    assert out.count("J(t) =") == 6
    assert "hamiltonian,z_angle,c0,c1,c2" in out


def test_table1_csv_matches_the_library(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["table1", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["hamiltonian", "z_angle", "c0", "c1", "c2"]
    assert len(rows) == 6
    rho0 = np.outer(V0, V0.conj())
    pp = projector(3, unit_circle(float(rows[0][1])))
    want = current_derivatives_at_zero(rho0, H1, pp, order=2).coefficients
    assert_allclose([float(c) for c in rows[0][2:]], want, atol=0)


def test_table1_reference_assertion_passes(capsys):
    assert main(["table1", "--assert-paper-values"]) == 0
    assert "all 18 coefficients within tolerance" in capsys.readouterr().out


# ------------------------------------------------------------ current-curve


def test_current_curve_csv_and_figure(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    code = main(
        ["current-curve", "--t-end", "2", "--t-step", "0.1", "--out", str(out)]
    )
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["t", "J", "occupancy"]
    assert len(rows) == 21
    occ = np.array([float(r[2]) for r in rows])
    assert occ.min() >= -1e-9 and occ.max() <= 1 + 1e-9
    png = tmp_path / "curve.png"
    assert png.exists() and png.stat().st_size > 1000
    printed = capsys.readouterr().out
    assert "# sign changes:" in printed
    assert "# J range:" in printed


def test_current_curve_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert main(["current-curve", "--t-end", "1", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_current_curve_matches_the_library(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["current-curve", "--t-end", "0.5", "--t-step", "0.25", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    rho0 = np.outer(V0, V0.conj())
    series = current_series(rho0, H1, projector(3, unit_circle(np.pi / 4)), np.array([0.0, 0.25, 0.5]))
    assert_allclose([float(r[1]) for r in rows], series.j_values, atol=0)


def test_current_curve_reference_assertion(capsys):
    assert main(["current-curve", "--assert-paper-values"]) == 0
    assert "# reference properties: OK" in capsys.readouterr().out


def test_current_curve_alternate_angle_changes_the_curve(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["current-curve", "--t-end", "1", "--out", str(a)]) == 0
    assert main(["current-curve", "--t-end", "1", "--z", "2pi/3", "--out", str(b)]) == 0
    _, ra = read_csv(a)
    _, rb = read_csv(b)
    ja = np.array([float(r[1]) for r in ra])
    jb = np.array([float(r[1]) for r in rb])
    assert np.abs(ja - jb).max() > 0.01


def test_current_curve_from_matrix_files_matches_builtins(tmp_path):
    hfile, sfile = tmp_path / "h.txt", tmp_path / "s.txt"
    write_matrix_file(hfile, H1)
    write_matrix_file(sfile, V0)
    builtin, filed = tmp_path / "x.csv", tmp_path / "y.csv"
    assert main(["current-curve", "--t-end", "1", "--out", str(builtin)]) == 0
    code = main(
        [
            "current-curve",
            "--t-end",
            "1",
            "--hamiltonian",
            str(hfile),
            "--state",
            str(sfile),
            "--out",
            str(filed),
        ]
    )
    assert code == 0
    assert builtin.read_bytes() == filed.read_bytes()


# ------------------------------------------------------------------ q-curve


def test_q_curve_columns_are_consistent(tmp_path, capsys):
    out = tmp_path / "q.csv"
    code = main(["q-curve", "--t-end", "0.2", "--t-step", "0.05", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["t", "Q", "Q_times_g", "g"]
    for row in rows:
        t, q, qg, g = map(float, row)
        assert q == pytest.approx(qg / g, rel=1e-12)
    printed = capsys.readouterr().out
    assert "# Q*g at t = 0.05: 1.1758" in printed
    assert "# Q*g at t = 0.10: 1.2048" in printed
    assert "# Q*g at t = 0.15: 1.2212" in printed
    assert "central difference" in printed
    assert (tmp_path / "q.png").exists()


def test_q_curve_reference_assertion(capsys):
    code = main(["q-curve", "--t-end", "0.2", "--t-step", "0.05", "--assert-paper-values"])
    assert code == 0
    assert "# reference values: OK" in capsys.readouterr().out


def test_q_curve_isolated_mode_is_constant(tmp_path):
    out = tmp_path / "iso.csv"
    code = main(
        [
            "q-curve",
            "--isolated",
            "--t-end",
            "2",
            "--t-step",
            "0.5",
            "--assert-paper-values",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    _, rows = read_csv(out)
    qs = np.array([float(row[1]) for row in rows])
    assert qs.max() - qs.min() < 1e-9
    assert qs[0] == pytest.approx(0.25, abs=1e-12)


def test_q_curve_mixed_state_needs_opt_in(capsys):
    code = main(
        ["q-curve", "--state", "maximally-mixed-bargmann", "--t-end", "0.1", "--t-step", "0.05"]
    )
    assert code == 2
    assert "--allow-mixed-g" in capsys.readouterr().err


def test_q_curve_mixed_state_with_opt_in(capsys):
    code = main(
        [
            "q-curve",
            "--state",
            "maximally-mixed-bargmann",
            "--allow-mixed-g",
            "--restarts",
            "8",
            "--t-end",
            "0.1",
            "--t-step",
            "0.05",
        ]
    )
    assert code == 0
    assert "upper bound" in capsys.readouterr().out


# ----------------------------------------------------------------- q-gt-one


def test_q_gt_one_report(tmp_path, capsys):
    out = tmp_path / "report.txt"
    code = main(["q-gt-one", "--assert-paper-values", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "g_lower[Pi(z)]" in text
    assert "window open      = True" in text
    assert "Q = 2d/g_lower" in text
    assert "classically forbidden window" in text
    q_line = [l for l in text.splitlines() if l.startswith("Q = 2d/g_lower")][0]
    q = float(q_line.split("=")[2].split()[0])
    assert 1.0001 < q <= 1.4049 * (1 + 1e-6)


def test_q_gt_one_exceptional_point_is_waived(capsys):
    code = main(["q-gt-one", "--z", "pi/2", "--assert-paper-values"])
    assert code == 0
    out = capsys.readouterr().out
    assert "strictness waived" in out
    assert "expected exception" in out


def test_q_gt_one_seed_determinism(capsys):
    assert main(["q-gt-one", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["q-gt-one", "--seed", "5"]) == 0
    assert capsys.readouterr().out == first


# -------------------------------------------------------------------- check


def test_check_all_suites_pass(capsys):
    assert main(["check", "--restarts", "16"]) == 0
    out = capsys.readouterr().out
    for suite in ("hilbert", "grothendieck", "bargmann", "dynamics", "strictness"):
        assert f"[{suite}]" in out
    assert "all invariant suites passed" in out
    assert "FAIL" not in out


def test_check_other_dimension(capsys):
    assert main(["check", "--d", "2", "--restarts", "8", "--z", "0.9"]) == 0
    assert "all invariant suites passed" in capsys.readouterr().out


# -------------------------------------------------------------- error paths


def test_missing_file_gives_input_error(capsys):
    code = main(["current-curve", "--hamiltonian", "/nonexistent/h.txt"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_bad_angle_gives_input_error(capsys):
    assert main(["current-curve", "--z", "banana"]) == 2


def test_bad_step_gives_input_error():
    assert main(["current-curve", "--t-step", "-0.1"]) == 2


def test_non_hermitian_file_gives_invariant_failure(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    write_matrix_file(bad, np.triu(np.ones((6, 6))))
    code = main(["current-curve", "--hamiltonian", str(bad)])
    assert code == 3
    assert "invariant failure" in capsys.readouterr().err


def test_wrong_shape_state_gives_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    write_matrix_file(bad, np.eye(4))
    assert main(["current-curve", "--state", str(bad)]) == 2


def test_builtin_dimension_mismatch_is_reported(capsys):
    assert main(["current-curve", "--d", "4"]) == 2
    assert "6x6" in capsys.readouterr().err


# ------------------------------------------------------------------ figures


def test_figure_helpers_write_files(tmp_path):
    rho0 = np.outer(V0, V0.conj())
    times = np.arange(0.0, 1.001, 0.05)
    series = current_series(rho0, H1, projector(3, unit_circle(np.pi / 4)), times)
    p1 = tmp_path / "j.png"
    render_current_curve(series, p1, title="demo")
    assert p1.exists() and p1.stat().st_size > 1000
    p2 = tmp_path / "q.png"
    render_q_curve(times, np.ones_like(times), np.ones_like(times), p2)
    assert p2.exists() and p2.stat().st_size > 1000


# ------------------------------------------------------------- entry points


def test_module_invocation_shows_usage():
    proc = subprocess.run(
        [sys.executable, "-m", "opencurrents", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "q-gt-one" in proc.stdout
