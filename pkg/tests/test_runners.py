import json

import numpy as np
import pytest

from slowvortex.config import (apply_overrides, config_hash, preset_dict,
                               scenario_from_dict)
from slowvortex.runners import (run_ellipticity_sweep, run_polarization,
                                run_propagation, run_response_map)


def _small_response_config():
    d = apply_overrides(preset_dict("fig2"), [
        "phi_list.count=8", "delta_list.count=6"])
    return scenario_from_dict(d)


def _small_propagation_config():
    d = apply_overrides(preset_dict("fig3a"), [
        "grid.x.count=9", "grid.y.count=9", "z_list=[0.0, 700.0]"])
    return scenario_from_dict(d)


def _small_polarization_config():
    d = apply_overrides(preset_dict("fig4b"), [
        "grid.x.count=7", "grid.y.count=7", "z_list=[0.0, 500.0]",
        "polarization.sweep.z.count=5", "polarization.sweep.delta.count=3",
        "polarization.sweep.grid.r.count=4",
        "polarization.sweep.grid.phi.count=8"])
    return scenario_from_dict(d)


# ==== response-map artifact =================================================


def test_response_csv_layout(tmp_path):
    config = _small_response_config()
    out = run_response_map(config, tmp_path)
    lines = (tmp_path / "response.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == ("phi,delta,im_chi_r,re_chi_r,im_chi_l,re_chi_l,"
                       "valid_r,valid_l,config_hash")
    assert len(lines) == 1 + 8 * 6
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "-3"
    assert first[6] == "1" and first[7] == "1"
    assert first[8] == config_hash(config)
    # phi-major ordering: delta cycles fastest
    deltas = [line.split(",")[1] for line in lines[1:8]]
    assert deltas[0] != deltas[1]
    assert [ln.split(",")[0] for ln in lines[1:7]] == ["0"] * 6
    assert out["csv"] == [tmp_path / "response.csv"]


def test_response_floats_carry_17_significant_digits(tmp_path):
    config = _small_response_config()
    run_response_map(config, tmp_path)
    rows = (tmp_path / "response.csv").read_text().splitlines()[1:]
    values = {row.split(",")[2] for row in rows}
    # round-trip exactness: parse back and reformat identically
    for v in values:
        assert f"{float(v):.17g}" == v


def test_response_sidecar_echoes_full_config(tmp_path):
    config = _small_response_config()
    out = run_response_map(config, tmp_path)
    sidecar = json.loads(out["sidecar"].read_text(encoding="utf-8"))
    assert sidecar["artifact"] == "slowvortex"
    assert sidecar["config_hash"] == config_hash(config)
    # the echoed config reparses to the identical scenario
    assert config_hash(scenario_from_dict(sidecar["config"])) == \
        config_hash(config)
    assert sidecar["files"]["response.csv"]["rows"] == 48
    assert sidecar["files"]["response.csv"]["kind"] == "response-map"


def test_response_threads_do_not_change_bytes(tmp_path):
    config = _small_response_config()
    run_response_map(config, tmp_path / "a", threads=1)
    run_response_map(config, tmp_path / "b", threads=7)
    assert (tmp_path / "a/response.csv").read_bytes() == \
        (tmp_path / "b/response.csv").read_bytes()


# ==== propagation artifact ==================================================


def test_propagation_files_and_intensity_sum(tmp_path):
    config = _small_propagation_config()
    out = run_propagation(config, tmp_path)
    names = [p.name for p in out["csv"]]
    assert names == ["propagation_z0.csv", "propagation_z1.csv"]
    rows = (tmp_path / "propagation_z1.csv").read_text().splitlines()
    assert rows[0] == ("x,y,intensity_r,intensity_l,intensity_total,"
                       "im_chi_r,im_chi_l,config_hash")
    for row in rows[1:]:
        cells = row.split(",")
        i_r, i_l, tot = float(cells[2]), float(cells[3]), float(cells[4])
        assert tot == pytest.approx(i_r + i_l, abs=1e-14 * max(tot, 1e-300))


def test_propagation_entrance_matches_input_intensity(tmp_path):
    config = _small_propagation_config()
    run_propagation(config, tmp_path)
    rows = (tmp_path / "propagation_z0.csv").read_text().splitlines()[1:]
    # on-axis cell of the 9x9 grid: vortex null, zero intensity
    center = rows[4 * 9 + 4].split(",")
    assert float(center[0]) == 0.0 and float(center[1]) == 0.0
    assert float(center[4]) == 0.0


def test_propagation_sidecar_lists_depths(tmp_path):
    config = _small_propagation_config()
    out = run_propagation(config, tmp_path)
    sidecar = json.loads(out["sidecar"].read_text())
    assert sidecar["files"]["propagation_z0.csv"]["zeta_z"] == 0.0
    assert sidecar["files"]["propagation_z1.csv"]["zeta_z"] == 700.0


# ==== polarization artifacts ================================================


def test_polarization_texture_files_per_variant_and_depth(tmp_path):
    config = _small_polarization_config()
    out = run_polarization(config, tmp_path)
    names = sorted(p.name for p in out["csv"])
    labels = [v.label for v in config.polarization.variants]
    expected = sorted([f"texture_{lab}_z{i}.csv"
                       for lab in labels for i in range(2)]
                      + ["ellipticity_sweep.csv"])
    assert names == expected
    head = (tmp_path / names[1]).read_text().splitlines()[0]
    assert head == "x,y,s0,kappa,xi,class,config_hash"


def test_polarization_classes_are_labels(tmp_path):
    config = _small_polarization_config()
    run_polarization(config, tmp_path)
    rows = (tmp_path / "texture_theta_pi4_z0.csv").read_text().splitlines()[1:]
    classes = {row.split(",")[5] for row in rows}
    assert classes <= {"undefined", "linear", "elliptical", "left-circular",
                       "right-circular"}


def test_sweep_artifact_grid(tmp_path):
    config = _small_polarization_config()
    out = run_ellipticity_sweep(config, tmp_path)
    rows = (tmp_path / "ellipticity_sweep.csv").read_text().splitlines()
    assert rows[0] == "zeta_z,delta,avg_kappa,config_hash"
    assert len(rows) == 1 + 5 * 3
    # depth-major: detuning cycles fastest
    z_col = [row.split(",")[0] for row in rows[1:]]
    assert z_col[:3] == ["0", "0", "0"]
    assert json.loads(out["sidecar"].read_text())["files"][
        "ellipticity_sweep.csv"]["rows"] == 15


def test_sweep_requires_sweep_config(tmp_path):
    config = scenario_from_dict(apply_overrides(preset_dict("fig2"), []))
    with pytest.raises(ValueError):
        run_ellipticity_sweep(config, tmp_path)


def test_polarization_threads_do_not_change_bytes(tmp_path):
    config = _small_polarization_config()
    a = run_polarization(config, tmp_path / "a", threads=1)
    b = run_polarization(config, tmp_path / "b", threads=5)
    for pa, pb in zip(a["csv"], b["csv"]):
        assert pa.name == pb.name
        assert pa.read_bytes() == pb.read_bytes()


def test_repeated_runs_are_byte_identical(tmp_path):
    config = _small_propagation_config()
    run_propagation(config, tmp_path / "a")
    run_propagation(config, tmp_path / "b")
    for i in range(2):
        assert (tmp_path / f"a/propagation_z{i}.csv").read_bytes() == \
            (tmp_path / f"b/propagation_z{i}.csv").read_bytes()
