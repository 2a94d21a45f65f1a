import json
import math
import subprocess
import sys

import numpy as np
import pytest

RUN = [sys.executable, "-m", "cavityduo"]


def run_cli(*args, **kwargs):
    return subprocess.run(RUN + list(args), capture_output=True, text=True, **kwargs)


def load_csv(path):
    lines = path.read_text().split("\n")
    assert lines[0] == "# cavity-duo v1"
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:] if line]
    return header, rows


def column(header, rows, name, cast=float):
    i = header.index(name)
    return np.array([cast(row[i]) for row in rows]) if cast is float else [row[i] for row in rows]


def test_evolve_purity_floor(tmp_path):
    out = tmp_path / "evolve.csv"
    res = run_cli(
        "evolve", "--n", "0", "--alpha", "pi/4", "--tmax", "10", "--dt", "0.001", "--out", str(out)
    )
    assert res.returncode == 0, res.stderr
    header, rows = load_csv(out)
    pur = column(header, rows, "purity")
    assert pur.min() >= 0.5 - 1e-9
    assert abs(pur.min() - 0.5) <= 1e-6


def test_cpplane_trajectory_on_closed_curves(tmp_path):
    out = tmp_path / "cp.csv"
    res = run_cli("cpplane", "--n", "0", "--alpha", "pi/4", "--tmax", "20", "--dt", "0.01", "--out", str(out))
    assert res.returncode == 0, res.stderr
    header, rows = load_csv(out)
    labels = column(header, rows, "curve", cast=str)
    pur = column(header, rows, "purity")
    conc = column(header, rows, "concurrence")
    traj = np.array([lab == "trajectory" for lab in labels])
    p_t, c_t = pur[traj], conc[traj]
    lower = 0.5 * (1 - np.sqrt(2 * p_t - 1))
    upper = 0.5 * (1 + np.sqrt(2 * p_t - 1))
    assert np.max(np.minimum(np.abs(c_t - lower), np.abs(c_t - upper))) < 1e-9
    for expected in ("c_minus_alpha", "c_minus_bell", "mems", "werner", "limit"):
        assert expected in labels


def test_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        res = run_cli("evolve", "--n", "1", "--alpha", "pi/20", "--kappa", "0.7", "--tmax", "2", "--dt", "0.01", "--out", str(path))
        assert res.returncode == 0, res.stderr
    assert a.read_bytes() == b.read_bytes()


def test_csv_format_details(tmp_path):
    out = tmp_path / "fmt.csv"
    run_cli("evolve", "--n", "0", "--alpha", "pi/4", "--tmax", "0.02", "--dt", "0.01", "--out", str(out))
    data = out.read_bytes()
    assert b"\r" not in data
    text = data.decode()
    assert text.startswith("# cavity-duo v1\n")
    # 17 significant digits round-trip
    assert "0.70710678118654746" in text


def test_json_output(tmp_path):
    out = tmp_path / "o.json"
    res = run_cli("evolve", "--n", "0", "--alpha", "pi/4", "--tmax", "0.05", "--dt", "0.01", "--format", "json", "--out", str(out))
    assert res.returncode == 0, res.stderr
    doc = json.loads(out.read_text())
    assert doc["version"] == "cavity-duo v1"
    assert len(doc["t"]) == 6
    assert doc["purity"][0] == pytest.approx(1.0, abs=1e-12)


def test_spectrum_output(tmp_path):
    out = tmp_path / "spec.csv"
    res = run_cli(
        "spectrum", "--n", "2", "--delta1", "0.3", "--delta2", "-0.1",
        "--g1", "1", "--g2", "0.7", "--kappa", "0.2", "--ising", "0.1", "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    header, rows = load_csv(out)
    energies = column(header, rows, "energy")
    assert len(rows) == 4
    assert abs(energies.sum()) < 1e-9
    assert column(header, rows, "method", cast=str) == ["closed_form"] * 4
    assert column(header, rows, "residual").max() < 1e-9


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 0\nalpha = pi/4\ntmax = 0.02\ndt = 0.01\nkappa = 0.5  # overridden below\n")
    out1 = tmp_path / "c1.csv"
    res = run_cli("evolve", "--config", str(cfg), "--kappa", "0", "--out", str(out1))
    assert res.returncode == 0, res.stderr
    out2 = tmp_path / "c2.csv"
    res = run_cli("evolve", "--n", "0", "--alpha", "pi/4", "--tmax", "0.02", "--dt", "0.01", "--out", str(out2))
    assert res.returncode == 0, res.stderr
    assert out1.read_bytes() == out2.read_bytes()


def test_malformed_inputs_no_partial_output(tmp_path):
    out = tmp_path / "never.csv"
    cases = [
        ["evolve", "--n", "0", "--alpha", "pi/0", "--out", str(out)],
        ["evolve", "--n", "0", "--out", str(out)],
        ["evolve", "--n", "-3", "--alpha", "pi/4", "--out", str(out)],
        ["evolve", "--n", "0", "--alpha", "pi/4", "--dt", "0", "--out", str(out)],
        ["evolve", "--n", "0", "--alpha", "pi/4", "--init-amps", "1,0,0,0,0,0,0,0", "--out", str(out)],
        ["evolve", "--n", "0", "--alpha", "pi/4", "--format", "xml", "--out", str(out)],
        ["cpplane", "--n", "-1", "--alpha", "pi/4", "--out", str(out)],
    ]
    for args in cases:
        res = run_cli(*args)
        assert res.returncode != 0, args
        assert (res.stderr + res.stdout).strip() != ""
        assert not out.exists(), args
    bad_cfg = tmp_path / "bad.cfg"
    bad_cfg.write_text("nonsense line without equals\n")
    res = run_cli("evolve", "--config", str(bad_cfg), "--out", str(out))
    assert res.returncode == 2
    assert "bad.cfg" in res.stderr
    assert not out.exists()


def test_explicit_amplitudes(tmp_path):
    out = tmp_path / "amps.csv"
    res = run_cli(
        "evolve", "--n", "1", "--init-amps", "0,0,0,0,0,0,1,0",
        "--tmax", "0.02", "--dt", "0.01", "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    header, rows = load_csv(out)
    assert column(header, rows, "re_b4")[0] == pytest.approx(1.0, abs=1e-12)


def test_sweep(tmp_path):
    outdir = tmp_path / "sweep"
    res = run_cli(
        "sweep", "--n", "0", "--alpha", "pi/4,pi/20", "--kappa", "0,1.5",
        "--tmax", "0.02", "--dt", "0.01", "--out", str(outdir), "--workers", "3",
    )
    assert res.returncode == 0, res.stderr
    index_header, index_rows = load_csv(outdir / "index.csv")
    assert len(index_rows) == 4
    files = column(index_header, index_rows, "file", cast=str)
    assert files == sorted(files)
    for name in files:
        assert (outdir / name).exists()
    # spot check one point reproduces a direct run
    alphas = column(index_header, index_rows, "alpha")
    kappas = column(index_header, index_rows, "kappa")
    i = next(k for k in range(4) if abs(alphas[k] - math.pi / 4) < 1e-12 and kappas[k] == 1.5)
    direct = tmp_path / "direct.csv"
    run_cli("evolve", "--n", "0", "--alpha", "pi/4", "--kappa", "1.5", "--tmax", "0.02", "--dt", "0.01", "--out", str(direct))
    assert (outdir / files[i]).read_bytes() == direct.read_bytes()


def test_validate_exit_code():
    res = run_cli("validate", "--seed", "42")
    assert res.returncode == 0, res.stdout + res.stderr
    assert "all checks passed" in res.stdout
    assert res.stdout.count("PASS") >= 12
