"""Config validation and the end-to-end command-line pipelines."""

import json

import numpy as np
import pytest

import spinsurf as ss
from spinsurf.cli import main, write_obj, write_surface_csv
from spinsurf.config import build_grid, build_inputs, parse_config


def torus_config(**overrides):
    cfg = {
        "grid": {"nx": 64, "ny": 64, "length_x": 2 * np.pi, "length_y": 2 * np.pi,
                 "periodic_x": True, "periodic_y": True},
        "beta": "2*x",
        "potential": "from_beta",
        "left_spinor": {"analytic_family": {"a": 0, "b": 1, "alpha": 1}},
        "right_spinor": "canonical",
        "mode": "auto",
        "tolerance": 1e-9,
        "output": {"csv": True, "obj": True, "project_axes": [1, 2, 3]},
    }
    cfg.update(overrides)
    return cfg


def write_config(tmp_path, cfg, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


def test_unknown_keys_rejected():
    with pytest.raises(ss.ConfigError):
        parse_config(torus_config(surprise=1))
    bad_grid = torus_config()
    bad_grid["grid"]["nz"] = 3
    with pytest.raises(ss.ConfigError):
        parse_config(bad_grid)
    with pytest.raises(ss.ConfigError):
        parse_config(torus_config(mode="quantum"))
    with pytest.raises(ss.ConfigError):
        parse_config(torus_config(output={"project_axes": [1, 1, 2]}))


def test_config_requires_beta_when_canonical():
    cfg = torus_config()
    del cfg["beta"]
    with pytest.raises(ss.ConfigError):
        parse_config(cfg)


def test_bad_beta_expression():
    with pytest.raises(ss.ConfigError):
        parse_config(torus_config(beta="sin x"))


def test_build_grid_spacing_rules():
    cfg = parse_config(torus_config())
    grid = build_grid(cfg)
    assert grid.nx == 64 and abs(grid.hx - 2 * np.pi / 64) <= 1e-15
    assert grid.doubly_periodic

    both = torus_config()
    both["grid"]["hx"] = 0.1
    with pytest.raises(ss.ConfigError):
        build_grid(parse_config(both))

    refined = build_grid(cfg, refine=2)
    assert refined.nx == 128 and abs(refined.hx - grid.hx / 2) <= 1e-16


def test_build_inputs_flat_torus():
    inputs = build_inputs(parse_config(torus_config()))
    assert inputs.grid.nx == 64
    assert np.max(np.abs(inputs.potential.p.values - 0.5)) <= 1e-10
    r1, r2 = ss.left_dirac_residual(inputs.left, inputs.potential)
    assert max(r1.max_abs(), r2.max_abs()) <= 1e-10


def test_spinor_files_round_trip(tmp_path):
    grid = build_grid(parse_config(torus_config()))
    s = ss.constant_p_left_family(0.5, 0.0, 1.0, 1.0, grid)
    x, _ = grid.mesh()
    np.savez(tmp_path / "left.npz", s1=s.s1.values, s2=s.s2.values)
    np.savez(tmp_path / "right.npz", t1=np.cos(x) + 0j, t2=np.sin(x) + 0j)
    cfg = torus_config(left_spinor={"file": "left.npz"},
                       right_spinor={"file": "right.npz"})
    path = write_config(tmp_path, cfg)
    inputs = build_inputs(ss.config.load_config(path))
    assert np.max(np.abs(inputs.left.s1.values - s.s1.values)) == 0.0
    assert np.max(np.abs(inputs.right.t2.values - np.sin(x))) == 0.0


def test_generate_flat_torus(tmp_path, capsys):
    path = write_config(tmp_path, torus_config())
    out = tmp_path / "out"
    assert main(["generate", "--config", path, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["closedness_sup"] <= 1e-8
    assert report["conformality_sup"] <= 1e-8
    assert report["lagrangian_sup"] <= 1e-8
    assert abs(report["conformal_factor_min"] - 2.0) <= 1e-8
    assert not report["degenerate"]

    csv_lines = (out / "surface.csv").read_text().splitlines()
    assert csv_lines[0] == "x,y,X1,X2,X3,X4"
    assert len(csv_lines) == 1 + 64 * 64

    obj = (out / "surface.obj").read_text().splitlines()
    assert obj[0].startswith("#") and "dropped X4" in obj[0]
    verts = [l for l in obj if l.startswith("v ")]
    faces = [l for l in obj if l.startswith("f ")]
    assert len(verts) == 64 * 64
    assert len(faces) == 2 * 63 * 63
    idx = [int(tok) for line in faces for tok in line.split()[1:]]
    assert min(idx) >= 1 and max(idx) <= len(verts)


def test_generate_is_deterministic(tmp_path):
    path = write_config(tmp_path, torus_config())
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["generate", "--config", path, "--out", str(out1)]) == 0
    assert main(["generate", "--config", path, "--out", str(out2)]) == 0
    assert (out1 / "surface.csv").read_bytes() == (out2 / "surface.csv").read_bytes()
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()


def test_generate_plane_via_picard(tmp_path):
    cfg = torus_config(beta="0", left_spinor={"picard": {"seed": {"constant": [1.0, 0.0]}}})
    path = write_config(tmp_path, cfg)
    out = tmp_path / "out"
    assert main(["generate", "--config", path, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["conformality_sup"] <= 1e-12
    assert report["solver_iterations"] == 1


def test_generate_divergence_writes_history(tmp_path, capsys):
    cfg = torus_config(potential={"constant": [10.0, 0.0]},
                       left_spinor={"picard": {"seed": {"constant": [1.0, 0.5]},
                                               "max_iter": 50}})
    path = write_config(tmp_path, cfg)
    out = tmp_path / "out"
    assert main(["generate", "--config", path, "--out", str(out)]) == 2
    history = json.loads((out / "residual_history.json").read_text())
    assert len(history) >= 1
    assert "diverged" in capsys.readouterr().err


def test_verify_command(tmp_path, capsys):
    path = write_config(tmp_path, torus_config())
    out = tmp_path / "out"
    assert main(["verify", "--config", path, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["left_residual_sup"] <= 1e-10
    assert report["right_residual_sup"] <= 1e-10
    assert "closedness_sup" in capsys.readouterr().out


def test_compare_command(tmp_path):
    path = write_config(tmp_path, torus_config())
    out = tmp_path / "out"
    assert main(["compare", "--config", path, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["equivalence_distance"] <= 1e-10
    # a zero tolerance cannot be met
    assert main(["compare", "--config", path, "--out", str(out), "--tolerance", "0"]) == 1


def test_convergence_command(tmp_path, capsys):
    cfg = torus_config()
    cfg["grid"].update({"nx": 16, "ny": 16})
    path = write_config(tmp_path, cfg)
    out = tmp_path / "out"
    assert main(["convergence", "--config", path, "--out", str(out), "--levels", "2"]) == 2
    assert main(["convergence", "--config", path, "--out", str(out), "--spectral",
                 "--levels", "3"]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] and len(report["levels"]) == 3


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["generate", "--config", str(tmp_path / "nope.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_export_helpers(tmp_path):
    grid = ss.Grid.rectangle(4)
    x, y = grid.mesh()
    X = ss.Immersion4(grid, x, y, np.zeros(grid.shape), np.zeros(grid.shape))
    write_surface_csv(tmp_path / "s.csv", X)
    rows = (tmp_path / "s.csv").read_text().splitlines()
    first = rows[1].split(",")
    assert float(first[0]) == 0.0 and float(first[2]) == 0.0
    write_obj(tmp_path / "s.obj", X, (2, 3, 4))
    assert "dropped X1" in (tmp_path / "s.obj").read_text().splitlines()[0]
