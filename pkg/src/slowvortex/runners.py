"""Scenario run drivers: evaluate and emit CSV tables with JSON sidecars.

Every run writes UTF-8 CSV (17-significant-digit floats, mandatory header,
outer-coordinate-major row order, trailing config_hash provenance column)
plus one JSON sidecar echoing the complete configuration, the tool version,
and the emitted file list.  Output is byte-identical across repeat runs and
across thread counts: work is split into fixed chunks, computed (possibly
concurrently) as pure functions, and written by a single writer in order.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .beam import initial_fields
from .config import ScenarioConfig, config_hash, scenario_to_dict
from .polarization import ellipticity_sweep, texture_map, variant_config
from .propagation import propagate_analytic, q_factor
from .response import response_map, susceptibility_general, validity_floor

__all__ = [
    "run_ellipticity_sweep",
    "run_polarization",
    "run_propagation",
    "run_response_map",
]

_DELTA_CHUNK = 64  # fixed work-chunk sizes keep output independent of threads


def _map_ordered(fn, items, threads: int) -> list:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _write_csv(path: Path, columns: list[tuple[str, object]]) -> int:
    """Write named columns as CSV; returns the row count."""
    texts = []
    n_rows = None
    for _, col in columns:
        if isinstance(col, np.ndarray):
            if col.dtype.kind == "f":
                text = [f"{v:.17g}" for v in col.tolist()]
            elif col.dtype.kind in "iub":
                text = [str(int(v)) for v in col.tolist()]
            else:
                text = [str(v) for v in col.tolist()]
        else:
            text = [str(v) for v in col]
        if n_rows is None:
            n_rows = len(text)
        texts.append(text)
    lines = [",".join(name for name, _ in columns)]
    lines.extend(map(",".join, zip(*texts)))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return n_rows


def _write_sidecar(path: Path, command: str, config: ScenarioConfig,
                   files: dict) -> None:
    doc = {
        "artifact": "slowvortex",
        "version": __version__,
        "command": command,
        "config_hash": config_hash(config),
        "config": scenario_to_dict(config),
        "files": files,
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _prepare(out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def run_response_map(config: ScenarioConfig, out_dir, threads: int = 1) -> dict:
    """Susceptibility map over phi x delta -> response.csv + response.json."""
    out = _prepare(out_dir)
    phi = config.phi_list.values()
    delta = config.delta_list.values()
    bounds = [(i, min(i + _DELTA_CHUNK, delta.size))
              for i in range(0, delta.size, _DELTA_CHUNK)]
    parts = _map_ordered(lambda ab: response_map(phi, delta[ab[0]:ab[1]], config),
                         bounds, threads)
    chi_r = np.concatenate([p.chi_r for p in parts], axis=1)
    chi_l = np.concatenate([p.chi_l for p in parts], axis=1)
    valid_r = np.concatenate([p.valid_r for p in parts], axis=1)
    valid_l = np.concatenate([p.valid_l for p in parts], axis=1)
    digest = config_hash(config)
    n = phi.size * delta.size
    csv_path = out / "response.csv"
    rows = _write_csv(csv_path, [
        ("phi", np.repeat(phi, delta.size)),
        ("delta", np.tile(delta, phi.size)),
        ("im_chi_r", chi_r.imag.ravel()),
        ("re_chi_r", chi_r.real.ravel()),
        ("im_chi_l", chi_l.imag.ravel()),
        ("re_chi_l", chi_l.real.ravel()),
        ("valid_r", valid_r.ravel()),
        ("valid_l", valid_l.ravel()),
        ("config_hash", [digest] * n),
    ])
    sidecar = out / "response.json"
    _write_sidecar(sidecar, "response-map", config,
                   {"response.csv": {"rows": rows, "kind": "response-map"}})
    return {"csv": [csv_path], "sidecar": sidecar}


def run_propagation(config: ScenarioConfig, out_dir, threads: int = 1) -> dict:
    """Per-depth transverse intensity/absorption maps -> propagation_z*.csv."""
    out = _prepare(out_dir)
    grid = config.grid.to_grid()
    r, phi, x, y = grid.points()
    q = q_factor(config.drive.delta, config.drive.delta_c, config.drive.omega_c,
                 config.atom, config.zeta)
    theta = config.phaseonium.theta
    floor = validity_floor(config)
    parity = config.parity()
    digest = config_hash(config)

    def one(z: float):
        pair = propagate_analytic(initial_fields(r, phi, config.beam), q, theta, z)
        i_r = np.abs(pair.omega_r) ** 2
        i_l = np.abs(pair.omega_l) ** 2
        chi = susceptibility_general(pair, q, theta, config.zeta, floor)
        return i_r, i_l, parity * np.asarray(chi.chi_r).imag, \
            parity * np.asarray(chi.chi_l).imag

    results = _map_ordered(one, config.z_list, threads)
    files = {}
    csv_paths = []
    for idx, (z, (i_r, i_l, im_r, im_l)) in enumerate(zip(config.z_list, results)):
        name = f"propagation_z{idx}.csv"
        path = out / name
        rows = _write_csv(path, [
            ("x", x), ("y", y),
            ("intensity_r", i_r), ("intensity_l", i_l),
            ("intensity_total", i_r + i_l),
            ("im_chi_r", im_r), ("im_chi_l", im_l),
            ("config_hash", [digest] * x.size),
        ])
        files[name] = {"rows": rows, "zeta_z": z, "kind": "propagation"}
        csv_paths.append(path)
    sidecar = out / "propagation.json"
    _write_sidecar(sidecar, "propagate", config, files)
    return {"csv": csv_paths, "sidecar": sidecar}


def _texture_variants(config: ScenarioConfig):
    if config.polarization.variants:
        return [(v.label, v.theta, v.psi) for v in config.polarization.variants]
    return [("default", config.phaseonium.theta, config.beam.psi)]


def run_polarization(config: ScenarioConfig, out_dir, threads: int = 1) -> dict:
    """Per-depth polarization textures (one CSV per variant and depth), plus
    the ellipticity sweep CSV when the config carries a sweep section."""
    out = _prepare(out_dir)
    grid = config.grid.to_grid()
    digest = config_hash(config)
    items = [(label, theta, psi, idx, z)
             for label, theta, psi in _texture_variants(config)
             for idx, z in enumerate(config.z_list)]

    def one(item):
        label, theta, psi, idx, z = item
        vconf = variant_config(config, theta, psi)
        return texture_map(grid, vconf, [z])[0]

    slices = _map_ordered(one, items, threads)
    files = {}
    csv_paths = []
    for (label, _, _, idx, z), sl in zip(items, slices):
        name = f"texture_{label}_z{idx}.csv"
        path = out / name
        rows = _write_csv(path, [
            ("x", sl.x), ("y", sl.y), ("s0", sl.s0),
            ("kappa", sl.kappa), ("xi", sl.xi), ("class", sl.klass),
            ("config_hash", [digest] * sl.x.size),
        ])
        files[name] = {"rows": rows, "zeta_z": z, "variant": label,
                       "kind": "texture"}
        csv_paths.append(path)
    if config.polarization.sweep is not None:
        path, entry = _emit_sweep(config, out, digest)
        files[path.name] = entry
        csv_paths.append(path)
    sidecar = out / "polarization.json"
    _write_sidecar(sidecar, "polarization", config, files)
    return {"csv": csv_paths, "sidecar": sidecar}


def _emit_sweep(config: ScenarioConfig, out: Path, digest: str):
    z_vals, d_vals, avg = ellipticity_sweep(config)
    path = out / "ellipticity_sweep.csv"
    rows = _write_csv(path, [
        ("zeta_z", np.repeat(z_vals, d_vals.size)),
        ("delta", np.tile(d_vals, z_vals.size)),
        ("avg_kappa", avg.ravel()),
        ("config_hash", [digest] * (z_vals.size * d_vals.size)),
    ])
    return path, {"rows": rows, "kind": "ellipticity-sweep"}


def run_ellipticity_sweep(config: ScenarioConfig, out_dir, threads: int = 1) -> dict:
    """Depth x detuning averaged-ellipticity raster -> ellipticity_sweep.csv.

    The sweep is computed single-threaded regardless of ``threads``; output
    is identical either way.
    """
    out = _prepare(out_dir)
    path, entry = _emit_sweep(config, out, config_hash(config))
    sidecar = out / "ellipticity_sweep.json"
    _write_sidecar(sidecar, "ellipticity-sweep", config, {path.name: entry})
    return {"csv": [path], "sidecar": sidecar}
