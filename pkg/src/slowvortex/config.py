"""Scenario configuration: typed sections, strict JSON round-trip, presets.

A ScenarioConfig gathers everything a run consumes: beam, atom, drive,
phaseonium angle, medium strength, sampling grids, depth list and sweep
ranges, plus output options.  Parsing is strict -- unknown keys anywhere in
the document are rejected -- and ``to_dict`` emits plain JSON types so a
config echoes losslessly into run sidecars.  ``config_hash`` is a short
digest of the canonical JSON used to stamp every CSV row for provenance.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .beam import BeamSpec, TransverseGrid
from .bloch import AtomParams

__all__ = [
    "AxisSpec",
    "DriveConfig",
    "GridConfig",
    "OutputConfig",
    "PhaseoniumConfig",
    "PolarizationConfig",
    "PolarizationVariant",
    "ResponseConfig",
    "ScenarioConfig",
    "SweepConfig",
    "apply_overrides",
    "config_hash",
    "preset_names",
    "scenario_from_dict",
    "scenario_from_preset",
]


# ==== leaf sections =========================================================


@dataclass(frozen=True)
class AxisSpec:
    """Uniform sampling of one axis: linspace(start, stop, count, endpoint)."""

    start: float
    stop: float
    count: int
    endpoint: bool = True

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"axis count must be a positive integer, got {self.count}")
        if self.count > 1 and not self.stop > self.start:
            raise ValueError("axis stop must exceed start when count > 1")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count, endpoint=self.endpoint)


@dataclass(frozen=True)
class DriveConfig:
    """Shared probe detuning, control detuning, and control Rabi amplitude."""

    delta: float = 0.0
    delta_c: float = 0.0
    omega_c: float = 1.0

    def __post_init__(self):
        for name in ("delta", "delta_c", "omega_c"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"drive.{name} must be finite")


@dataclass(frozen=True)
class PhaseoniumConfig:
    """Ground-state preparation angle: cos(t)|1> + sin(t)|2>."""

    theta: float = np.pi / 4

    def __post_init__(self):
        if not np.isfinite(self.theta):
            raise ValueError("phaseonium.theta must be finite")


@dataclass(frozen=True)
class GridConfig:
    """Transverse sampling grid; polar uses (r, phi), cartesian uses (x, y)."""

    mode: str = "cartesian"
    x: AxisSpec | None = None
    y: AxisSpec | None = None
    r: AxisSpec | None = None
    phi: AxisSpec | None = None

    def __post_init__(self):
        if self.mode == "cartesian":
            if self.x is None or self.y is None:
                raise ValueError("cartesian grid requires x and y axes")
            if self.r is not None or self.phi is not None:
                raise ValueError("cartesian grid takes no r/phi axes")
        elif self.mode == "polar":
            if self.r is None or self.phi is None:
                raise ValueError("polar grid requires r and phi axes")
            if self.x is not None or self.y is not None:
                raise ValueError("polar grid takes no x/y axes")
        else:
            raise ValueError(f"unknown grid mode {self.mode!r}")

    def to_grid(self) -> TransverseGrid:
        if self.mode == "cartesian":
            return TransverseGrid.cartesian(self.x.values(), self.y.values())
        return TransverseGrid.polar(self.r.values(), self.phi.values())


@dataclass(frozen=True)
class ResponseConfig:
    """Fixed transverse radius and depth at which response maps are evaluated."""

    r: float = 1.0
    z: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("response.r must be >= 0")
        if self.z < 0:
            raise ValueError("response.z must be >= 0")


@dataclass(frozen=True)
class PolarizationVariant:
    """One labelled (theta, psi) preparation for texture output."""

    label: str
    theta: float
    psi: float = 0.0

    def __post_init__(self):
        if not self.label or any(ch in self.label for ch in " /\\"):
            raise ValueError(f"variant label must be a filename-safe token, got {self.label!r}")


@dataclass(frozen=True)
class SweepConfig:
    """Depth x detuning raster of grid-averaged ellipticity."""

    z: AxisSpec
    delta: AxisSpec
    grid: GridConfig

    def __post_init__(self):
        if self.z.start < 0:
            raise ValueError("sweep depths must be >= 0")


@dataclass(frozen=True)
class PolarizationConfig:
    variants: tuple[PolarizationVariant, ...] = ()
    sweep: SweepConfig | None = None

    def __post_init__(self):
        labels = [v.label for v in self.variants]
        if len(set(labels)) != len(labels):
            raise ValueError("variant labels must be unique")


@dataclass(frozen=True)
class OutputConfig:
    """Output shaping: glyph decimation step for texture consumers."""

    decimation: int = 6

    def __post_init__(self):
        if int(self.decimation) != self.decimation or self.decimation < 1:
            raise ValueError("output.decimation must be a positive integer")


# ==== top-level scenario ====================================================


def _default_grid() -> GridConfig:
    return GridConfig(mode="cartesian",
                      x=AxisSpec(-2.5, 2.5, 121), y=AxisSpec(-2.5, 2.5, 121))


def _default_phi() -> AxisSpec:
    return AxisSpec(0.0, 2 * np.pi, 512, endpoint=False)


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete, self-describing description of one simulation scenario."""

    beam: BeamSpec = field(default_factory=BeamSpec)
    atom: AtomParams = field(default_factory=lambda: AtomParams(gamma_d=1e-3))
    drive: DriveConfig = field(default_factory=DriveConfig)
    phaseonium: PhaseoniumConfig = field(default_factory=PhaseoniumConfig)
    zeta: float = 1.0
    grid: GridConfig = field(default_factory=_default_grid)
    z_list: tuple[float, ...] = (0.0,)
    phi_list: AxisSpec = field(default_factory=_default_phi)
    delta_list: AxisSpec = field(default_factory=lambda: AxisSpec(-3.0, 3.0, 512))
    response: ResponseConfig = field(default_factory=ResponseConfig)
    polarization: PolarizationConfig = field(default_factory=PolarizationConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    sign_parity: str = "native"
    deterministic: bool = True

    def __post_init__(self):
        if not self.zeta > 0:
            raise ValueError("zeta must be positive")
        object.__setattr__(self, "z_list", tuple(float(z) for z in self.z_list))
        if len(self.z_list) == 0:
            raise ValueError("z_list must not be empty")
        if any(z < 0 for z in self.z_list) or any(not np.isfinite(z) for z in self.z_list):
            raise ValueError("z_list entries must be finite and >= 0")
        if self.sign_parity not in ("native", "paper"):
            raise ValueError(f"sign_parity must be 'native' or 'paper', got {self.sign_parity!r}")
        if self.deterministic is not True:
            raise ValueError("non-deterministic execution is not supported")

    def parity(self) -> float:
        """Sign applied to emitted susceptibilities: +1 native, -1 paper."""
        return -1.0 if self.sign_parity == "paper" else 1.0


# ==== strict dict -> config =================================================


def _check_keys(d: dict, allowed, path: str) -> None:
    if not isinstance(d, dict):
        raise ValueError(f"config section {path!r} must be an object")
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise ValueError(f"unknown config key(s) under {path!r}: {', '.join(unknown)}")


def _axis_from(d: dict, path: str, endpoint_default: bool = True) -> AxisSpec:
    _check_keys(d, ("start", "stop", "count", "endpoint"), path)
    try:
        return AxisSpec(start=float(d["start"]), stop=float(d["stop"]),
                        count=int(d["count"]),
                        endpoint=bool(d.get("endpoint", endpoint_default)))
    except KeyError as exc:
        raise ValueError(f"axis {path!r} is missing key {exc.args[0]!r}") from None


def _beam_from(d: dict, path: str) -> BeamSpec:
    _check_keys(d, ("l", "w", "epsilon", "alpha", "psi"), path)
    base = BeamSpec()
    return BeamSpec(l=int(d.get("l", base.l)), w=float(d.get("w", base.w)),
                    epsilon=float(d.get("epsilon", base.epsilon)),
                    alpha=float(d.get("alpha", base.alpha)),
                    psi=float(d.get("psi", base.psi)))


def _atom_from(d: dict, path: str) -> AtomParams:
    _check_keys(d, ("gamma_41", "gamma_42", "gamma_43", "gamma_d"), path)
    base = AtomParams()
    return AtomParams(gamma_41=float(d.get("gamma_41", base.gamma_41)),
                      gamma_42=float(d.get("gamma_42", base.gamma_42)),
                      gamma_43=float(d.get("gamma_43", base.gamma_43)),
                      gamma_d=float(d.get("gamma_d", base.gamma_d)))


def _grid_from(d: dict, path: str) -> GridConfig:
    _check_keys(d, ("mode", "x", "y", "r", "phi"), path)
    mode = d.get("mode", "cartesian")
    axes = {}
    for name in ("x", "y", "r"):
        if name in d:
            axes[name] = _axis_from(d[name], f"{path}.{name}")
    if "phi" in d:
        axes["phi"] = _axis_from(d["phi"], f"{path}.phi", endpoint_default=False)
    return GridConfig(mode=mode, **axes)


def _variant_from(d: dict, path: str) -> PolarizationVariant:
    _check_keys(d, ("label", "theta", "psi"), path)
    if "label" not in d or "theta" not in d:
        raise ValueError(f"variant at {path!r} requires 'label' and 'theta'")
    return PolarizationVariant(label=str(d["label"]), theta=float(d["theta"]),
                               psi=float(d.get("psi", 0.0)))


def _polarization_from(d: dict, path: str) -> PolarizationConfig:
    _check_keys(d, ("variants", "sweep"), path)
    variants = tuple(_variant_from(v, f"{path}.variants[{i}]")
                     for i, v in enumerate(d.get("variants", ())))
    sweep = None
    if d.get("sweep") is not None:
        sd = d["sweep"]
        _check_keys(sd, ("z", "delta", "grid"), f"{path}.sweep")
        for key in ("z", "delta", "grid"):
            if key not in sd:
                raise ValueError(f"sweep at {path!r} requires key {key!r}")
        sweep = SweepConfig(z=_axis_from(sd["z"], f"{path}.sweep.z"),
                            delta=_axis_from(sd["delta"], f"{path}.sweep.delta"),
                            grid=_grid_from(sd["grid"], f"{path}.sweep.grid"))
    return PolarizationConfig(variants=variants, sweep=sweep)


def scenario_from_dict(d: dict) -> ScenarioConfig:
    """Build a ScenarioConfig from a plain dict, rejecting unknown keys."""
    allowed = ("beam", "atom", "drive", "phaseonium", "zeta", "grid", "z_list",
               "phi_list", "delta_list", "response", "polarization", "output",
               "sign_parity", "deterministic")
    _check_keys(d, allowed, "<root>")
    kwargs = {}
    if "beam" in d:
        kwargs["beam"] = _beam_from(d["beam"], "beam")
    if "atom" in d:
        kwargs["atom"] = _atom_from(d["atom"], "atom")
    if "drive" in d:
        _check_keys(d["drive"], ("delta", "delta_c", "omega_c"), "drive")
        base = DriveConfig()
        kwargs["drive"] = DriveConfig(
            delta=float(d["drive"].get("delta", base.delta)),
            delta_c=float(d["drive"].get("delta_c", base.delta_c)),
            omega_c=float(d["drive"].get("omega_c", base.omega_c)))
    if "phaseonium" in d:
        _check_keys(d["phaseonium"], ("theta",), "phaseonium")
        kwargs["phaseonium"] = PhaseoniumConfig(
            theta=float(d["phaseonium"].get("theta", np.pi / 4)))
    if "zeta" in d:
        kwargs["zeta"] = float(d["zeta"])
    if "grid" in d:
        kwargs["grid"] = _grid_from(d["grid"], "grid")
    if "z_list" in d:
        if not isinstance(d["z_list"], (list, tuple)):
            raise ValueError("z_list must be an array of depths")
        kwargs["z_list"] = tuple(float(z) for z in d["z_list"])
    if "phi_list" in d:
        kwargs["phi_list"] = _axis_from(d["phi_list"], "phi_list", endpoint_default=False)
    if "delta_list" in d:
        kwargs["delta_list"] = _axis_from(d["delta_list"], "delta_list")
    if "response" in d:
        _check_keys(d["response"], ("r", "z"), "response")
        base = ResponseConfig()
        kwargs["response"] = ResponseConfig(r=float(d["response"].get("r", base.r)),
                                            z=float(d["response"].get("z", base.z)))
    if "polarization" in d:
        kwargs["polarization"] = _polarization_from(d["polarization"], "polarization")
    if "output" in d:
        _check_keys(d["output"], ("decimation",), "output")
        kwargs["output"] = OutputConfig(decimation=int(d["output"].get("decimation", 6)))
    if "sign_parity" in d:
        kwargs["sign_parity"] = str(d["sign_parity"])
    if "deterministic" in d:
        kwargs["deterministic"] = bool(d["deterministic"])
    return ScenarioConfig(**kwargs)


# ==== config -> dict / digest ===============================================


def _axis_dict(a: AxisSpec) -> dict:
    return {"start": a.start, "stop": a.stop, "count": a.count, "endpoint": a.endpoint}


def _grid_dict(g: GridConfig) -> dict:
    out = {"mode": g.mode}
    for name in ("x", "y", "r", "phi"):
        axis = getattr(g, name)
        if axis is not None:
            out[name] = _axis_dict(axis)
    return out


def scenario_to_dict(config: ScenarioConfig) -> dict:
    b, a, dr = config.beam, config.atom, config.drive
    out = {
        "beam": {"l": b.l, "w": b.w, "epsilon": b.epsilon, "alpha": b.alpha, "psi": b.psi},
        "atom": {"gamma_41": a.gamma_41, "gamma_42": a.gamma_42,
                 "gamma_43": a.gamma_43, "gamma_d": a.gamma_d},
        "drive": {"delta": dr.delta, "delta_c": dr.delta_c, "omega_c": dr.omega_c},
        "phaseonium": {"theta": config.phaseonium.theta},
        "zeta": config.zeta,
        "grid": _grid_dict(config.grid),
        "z_list": list(config.z_list),
        "phi_list": _axis_dict(config.phi_list),
        "delta_list": _axis_dict(config.delta_list),
        "response": {"r": config.response.r, "z": config.response.z},
        "polarization": {
            "variants": [{"label": v.label, "theta": v.theta, "psi": v.psi}
                         for v in config.polarization.variants],
            "sweep": None if config.polarization.sweep is None else {
                "z": _axis_dict(config.polarization.sweep.z),
                "delta": _axis_dict(config.polarization.sweep.delta),
                "grid": _grid_dict(config.polarization.sweep.grid),
            },
        },
        "output": {"decimation": config.output.decimation},
        "sign_parity": config.sign_parity,
        "deterministic": config.deterministic,
    }
    return out


def config_hash(config: ScenarioConfig) -> str:
    """12-hex-digit digest of the canonical JSON rendering of the config."""
    canonical = json.dumps(scenario_to_dict(config), sort_keys=True,
                           separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def apply_overrides(d: dict, assignments) -> dict:
    """Return a copy of the config dict with 'dotted.path=value' assignments.

    Values parse as JSON literals with a bare-string fallback, so
    ``drive.omega_c=5`` and ``sign_parity=paper`` both work.  The input
    dict is left untouched.
    """
    d = copy.deepcopy(d)
    for item in assignments:
        if "=" not in item:
            raise ValueError(f"override {item!r} is not of the form key=value")
        path, raw = item.split("=", 1)
        keys = path.strip().split(".")
        if not all(keys):
            raise ValueError(f"override {item!r} has an empty key segment")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = d
        for key in keys[:-1]:
            nxt = node.get(key)
            if not isinstance(nxt, dict):
                raise ValueError(f"override path {path!r} does not reach a config section")
            node = nxt
        node[keys[-1]] = value
    return d


# ==== presets ===============================================================


_TH = np.pi / 4


def _base_dict(**over) -> dict:
    d = scenario_to_dict(ScenarioConfig())
    for key, val in over.items():
        d[key] = val
    return d


def _axis(start, stop, count, endpoint=True) -> dict:
    return {"start": float(start), "stop": float(stop), "count": int(count),
            "endpoint": bool(endpoint)}


def _cart_grid(half=2.5, count=121) -> dict:
    return {"mode": "cartesian", "x": _axis(-half, half, count),
            "y": _axis(-half, half, count)}


def _ring_grid() -> dict:
    return {"mode": "polar", "r": _axis(0.05, 2.5, 16),
            "phi": _axis(0.0, 2 * np.pi, 96, endpoint=False)}


def _sweep(z_stop=2000.0, z_count=201) -> dict:
    return {"z": _axis(0.0, z_stop, z_count), "delta": _axis(-0.4, 0.4, 81),
            "grid": _ring_grid()}


def _preset_fig2() -> dict:
    d = _base_dict()
    d["beam"].update(epsilon=1e-3, alpha=_TH, psi=0.0)
    d["response"] = {"r": 1.0, "z": 0.0}
    d["phi_list"] = _axis(0.0, 2 * np.pi, 512, endpoint=False)
    d["delta_list"] = _axis(-3.0, 3.0, 512)
    d["polarization"] = {"variants": [{"label": "theta_pi4", "theta": _TH, "psi": 0.0}],
                         "sweep": None}
    return d


def _preset_fig3(delta: float) -> dict:
    d = _preset_fig2()
    d["drive"]["delta"] = delta
    d["grid"] = _cart_grid(count=161)
    d["z_list"] = [0.0, 100.0, 300.0, 700.0, 1500.0]
    return d


def _preset_fig4a() -> dict:
    d = _base_dict()
    d["beam"].update(epsilon=1e-3, alpha=np.pi / 8, psi=0.0)
    d["grid"] = _cart_grid()
    d["z_list"] = [0.0, 500.0, 2000.0, 7000.0]
    d["output"] = {"decimation": 8}
    d["polarization"] = {
        "variants": [{"label": "psi_0", "theta": _TH, "psi": 0.0},
                     {"label": "psi_half_pi", "theta": _TH, "psi": np.pi / 2},
                     {"label": "psi_pi", "theta": _TH, "psi": np.pi}],
        "sweep": None,
    }
    return d


def _preset_fig4b() -> dict:
    d = _preset_fig4a()
    d["polarization"] = {
        "variants": [{"label": "theta_pi4", "theta": _TH, "psi": 0.0},
                     {"label": "theta_pi8", "theta": np.pi / 8, "psi": 0.0},
                     {"label": "theta_3pi8", "theta": 3 * np.pi / 8, "psi": 0.0}],
        "sweep": _sweep(),
    }
    return d


def _preset_fig5a() -> dict:
    d = _preset_fig4b()
    d["drive"]["delta"] = 0.1
    d["z_list"] = [0.0, 100.0, 500.0, 2000.0]
    return d


def _preset_fig5() -> dict:
    d = _preset_fig5a()
    d["drive"]["omega_c"] = 5.0
    d["z_list"] = [0.0, 2000.0, 20000.0, 150000.0]
    return d


_PRESETS = {
    "fig2": ("on-resonance susceptibility map over (phi, Delta) at r = w, z = 0",
             _preset_fig2),
    "fig3a": ("intensity evolution of the balanced vortex pair at Delta = 0",
              lambda: _preset_fig3(0.0)),
    "fig3b": ("intensity evolution of the balanced vortex pair at Delta = 0.1",
              lambda: _preset_fig3(0.1)),
    "fig4a": ("polarization textures vs relative phase psi at Delta = 0",
              _preset_fig4a),
    "fig4b": ("polarization textures vs preparation angle theta, with "
              "depth x detuning ellipticity sweep", _preset_fig4b),
    "fig5a": ("slow textures and ellipticity sweep at Delta = 0.1, Omega_C = Gamma",
              _preset_fig5a),
    "fig5": ("stiffened textures and ellipticity sweep at Delta = 0.1, "
             "Omega_C = 5 Gamma", _preset_fig5),
}


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESETS))


def preset_description(name: str) -> str:
    if name not in _PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return _PRESETS[name][0]


def preset_dict(name: str) -> dict:
    """Plain-dict form of a preset (the hook for --set overrides)."""
    if name not in _PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return _PRESETS[name][1]()


def scenario_from_preset(name: str) -> ScenarioConfig:
    return scenario_from_dict(preset_dict(name))
