import math
import subprocess
import sys

import numpy as np
import pytest

from dqca_lab import oscillatory_integral, stationary_phase_integral

from conftest import BETA_STAR


def run_cli(*args):
    cmd = [sys.executable, "-m", "dqca_lab.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=True)


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [[float(v.rstrip("j")) if "j" not in v else complex(v) for v in ln.split(",")]
            for ln in lines[1:]]
    return header, rows


def test_help_lists_subcommands():
    cp = run_cli("--help")
    assert cp.returncode == 0, cp.stderr
    for sub in ("evolve", "sigma", "entropy", "weak-limit", "stationary-phase", "dispersion"):
        assert sub in cp.stdout


def test_version_flag():
    cp = run_cli("--version")
    assert cp.returncode == 0
    assert cp.stdout.startswith("dqca-lab ")


def test_evolve_csv_shape_and_mass():
    cp = run_cli("evolve", "--steps", "12")
    assert cp.returncode == 0, cp.stderr
    assert cp.stdout.startswith("# dqca-lab ")
    header, rows = parse_csv(cp.stdout)
    assert header == ["n", "prob", "re_R", "im_R", "re_L", "im_L"]
    ns = [r[0] for r in rows]
    assert min(ns) >= -12 and max(ns) <= 12
    assert sum(r[1] for r in rows) == pytest.approx(1.0, abs=1e-12)
    for r in rows:
        assert r[1] == pytest.approx(r[2] ** 2 + r[3] ** 2 + r[4] ** 2 + r[5] ** 2, abs=1e-15)


def test_evolve_zero_steps_echoes_init():
    cp = run_cli("evolve", "--steps", "0", "--init-a", "1,0", "--init-b", "0,0", "--n0", "4")
    header, rows = parse_csv(cp.stdout)
    assert rows == [[4.0, 1.0, 1.0, 0.0, 0.0, 0.0]]


def test_evolve_qw_parity_zeros():
    cp = run_cli("evolve", "--model", "qw", "--steps", "10", "--init-a", "1,0")
    _, rows = parse_csv(cp.stdout)
    odd = [r for r in rows if (int(r[0]) + 10) % 2 == 1]
    assert odd and all(r[1] == 0.0 for r in odd)


def test_byte_determinism(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        cp = run_cli("evolve", "--steps", "7", "--out", str(out))
        assert cp.returncode == 0
        assert cp.stdout == ""
    assert out1.read_bytes() == out2.read_bytes()


def test_sigma_columns_and_final_value():
    cp = run_cli("sigma", "--steps", "20")
    header, rows = parse_csv(cp.stdout)
    assert header == ["t", "sigma_exact", "sigma_asymptotic"]
    assert len(rows) == 21
    assert rows[0][1] == 0.0
    assert rows[-1][2] == pytest.approx(20 * math.sqrt(1 - BETA_STAR), abs=1e-12)


def test_sigma_zero_steps_single_row():
    cp = run_cli("sigma", "--steps", "0")
    _, rows = parse_csv(cp.stdout)
    assert rows == [[0.0, 0.0, 0.0]]


def test_sigma_rejects_meyer():
    cp = run_cli("sigma", "--model", "meyer", "--rho", "0.3")
    assert cp.returncode == 2
    assert "meyer" in cp.stderr


def test_entropy_with_asymptotic_column():
    cp = run_cli("entropy", "--steps", "3", "--init-a", "1,0", "--init-b", "0,0", "--asymptotic")
    header, rows = parse_csv(cp.stdout)
    assert header == ["t", "entropy", "entropy_asymptotic"]
    assert rows[0][1] == 0.0
    assert rows[0][2] == pytest.approx(0.93720156065904137, abs=1e-12)
    assert all(r[2] == rows[0][2] for r in rows)


def test_entropy_asymptotic_requires_dqca():
    cp = run_cli("entropy", "--model", "qw", "--asymptotic")
    assert cp.returncode == 2


def test_weak_limit_rows_and_trailer():
    cp = run_cli("weak-limit", "--steps", "60")
    assert cp.returncode == 0, cp.stderr
    header, rows = parse_csv(cp.stdout)
    assert header == ["y", "pdf_analytic", "pdf_empirical"]
    center = [r for r in rows if r[0] == 0.0]
    assert len(center) == 1
    assert center[0][1] == pytest.approx(1 / math.pi, abs=1e-12)
    assert "l1_binned_50_full" in cp.stdout and "l1_binned_50_support" in cp.stdout


def test_weak_limit_respects_support():
    cp = run_cli("weak-limit", "--steps", "50", "--beta", "0.9")
    _, rows = parse_csv(cp.stdout)
    bound = math.sqrt(1 - 0.81)
    assert rows and all(abs(r[0]) < bound for r in rows)


def test_weak_limit_rejects_qw():
    cp = run_cli("weak-limit", "--model", "qw")
    assert cp.returncode == 2


def test_stationary_phase_site_mode():
    cp = run_cli("stationary-phase", "--steps", "20")
    header, rows = parse_csv(cp.stdout)
    assert header == ["n", "prob_exact", "prob_approx", "rel_err"]
    assert len(rows) == 41
    cone = 20 * math.sqrt(1 - BETA_STAR**2)
    outside = [r for r in rows if abs(r[0]) > cone]
    assert outside and all(r[2] == 0.0 for r in outside)
    # interior rows carry a meaningful approximation
    mid = [r for r in rows if abs(r[0]) <= 8][0]
    assert mid[2] > 0.0


def test_stationary_phase_function_mode_matches_api():
    cp = run_cli("stationary-phase", "--function", "I1", "--t", "4", "--grid", "5", "--tol", "1e-10")
    header, rows = parse_csv(cp.stdout)
    assert header == ["x", "re_exact", "im_exact", "re_approx", "im_approx"]
    assert len(rows) == 5
    x_mid = rows[2]
    assert x_mid[0] == 0.0
    ref = oscillatory_integral(1, 0.0, 4, BETA_STAR, tol=1e-10).value
    assert x_mid[1] == pytest.approx(ref.real, abs=1e-12)
    sp = stationary_phase_integral(1, 0.0, 4, BETA_STAR).value
    assert x_mid[3] == pytest.approx(sp.real, abs=1e-12)
    # boundary columns are clamped to zero
    assert rows[0][3] == 0.0 and rows[0][4] == 0.0


def test_stationary_phase_rejects_qw():
    cp = run_cli("stationary-phase", "--model", "qw")
    assert cp.returncode == 2


def test_quadrature_budget_exhaustion_is_exit_3():
    # t this large needs more refinement panels than the quadrature budget
    cp = run_cli("stationary-phase", "--function", "I1", "--t", "70000", "--grid", "1")
    assert cp.returncode == 3
    assert "numerical failure" in cp.stderr


def test_dispersion_columns_and_values():
    cp = run_cli("dispersion", "--grid", "8")
    header, rows = parse_csv(cp.stdout)
    assert header == ["p", "lambda", "v", "H00", "H01"]
    row0 = [r for r in rows if r[0] == 0.0][0]
    assert row0[1] == pytest.approx(math.pi / 4, abs=1e-12)
    beta = BETA_STAR
    for r in rows:
        lam = r[1]
        assert complex(r[4]).real == pytest.approx(lam * beta / math.sin(lam), abs=1e-12)


def test_dispersion_qw_dqca_matched_columns_identical():
    a = run_cli("dispersion", "--model", "qw", "--grid", "16")
    b = run_cli("dispersion", "--model", "dqca", "--grid", "16")
    col = lambda cp: [ln.split(",")[1] for ln in cp.stdout.splitlines()
                      if ln and not ln.startswith("#")][1:]
    assert col(a) == col(b)  # identical formatted lambda values


def test_flag_validation_exit_codes():
    assert run_cli("evolve", "--model", "meyer").returncode == 2
    assert run_cli("evolve", "--bloch", "1,1", "--init-a", "1,0").returncode == 2
    assert run_cli("evolve", "--init-a", "1;0").returncode == 2
    assert run_cli("evolve", "--init-a", "1,0", "--init-b", "1,0").returncode == 2
    assert run_cli("nonsense").returncode == 2


def test_out_file_written(tmp_path):
    out = tmp_path / "d.csv"
    cp = run_cli("dispersion", "--grid", "4", "--out", str(out))
    assert cp.returncode == 0
    assert cp.stdout == ""
    text = out.read_text()
    assert text.startswith("# dqca-lab ")
    assert "p,lambda,v,H00,H01" in text
