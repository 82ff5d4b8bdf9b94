"""Polarization textures of the transmitted field in the circular basis.

The local field pair (E_R, E_L) maps to Stokes parameters

    S0 = |E_R|^2 + |E_L|^2,        S1 = 2 Re(E_R* E_L),
    S2 = 2 Im(E_R* E_L),           S3 = |E_R|^2 - |E_L|^2,

all fully polarized (S0^2 = S1^2 + S2^2 + S3^2 identically).  The ellipse
angles are kappa = arcsin(S3/S0)/2 (negative = left-handed) and orientation
xi = atan2(S2, S1)/2.  Points are classified as linear / elliptical /
left- or right-circular by thresholds on |kappa|, or "undefined" below an
intensity floor.

Also here: grid-averaged ellipticity (and its depth x detuning sweep) and
the azimuthal petal count of the total-intensity ring profile.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .beam import FieldPair, TransverseGrid, initial_fields
from .config import ScenarioConfig
from .propagation import propagate_analytic, q_factor

__all__ = [
    "CLASS_LABELS",
    "PolarizationState",
    "StokesVector",
    "TextureSlice",
    "average_ellipticity",
    "ellipticity_sweep",
    "fields_at_z",
    "petal_count",
    "polarization_state",
    "stokes",
    "texture_map",
]

#: |kappa| at or below this is "linear"; within this of pi/4 is circular.
KAPPA_MARGIN = 0.05
#: Texture points dimmer than this fraction of the slice maximum are undefined.
INTENSITY_FLOOR_FRACTION = 1e-2
#: Tolerated overshoot of |S3/S0| beyond 1 before arcsin clamping is refused.
CLAMP_TOLERANCE = 1e-9

CLASS_LABELS = ("undefined", "linear", "elliptical",
                "left-circular", "right-circular")


@dataclass(frozen=True)
class StokesVector:
    s0: float | np.ndarray
    s1: float | np.ndarray
    s2: float | np.ndarray
    s3: float | np.ndarray


@dataclass(frozen=True)
class PolarizationState:
    """Ellipse angles and class label(s); kappa = xi = 0 where undefined."""

    kappa: float | np.ndarray
    xi: float | np.ndarray
    klass: str | np.ndarray


def stokes(e_r, e_l) -> StokesVector:
    """Stokes parameters of a circular-basis field pair (broadcasts)."""
    e_r = np.asarray(e_r)
    e_l = np.asarray(e_l)
    ir = (e_r.real ** 2 + e_r.imag ** 2)
    il = (e_l.real ** 2 + e_l.imag ** 2)
    cross = np.conj(e_r) * e_l
    s0, s1, s2, s3 = ir + il, 2.0 * cross.real, 2.0 * cross.imag, ir - il
    if np.ndim(s0) == 0:
        return StokesVector(float(s0), float(s1), float(s2), float(s3))
    return StokesVector(s0, s1, s2, s3)


def polarization_state(s: StokesVector, floor: float = 0.0) -> PolarizationState:
    """Ellipse angles and class from Stokes parameters.

    Entries with s0 below the floor (or exactly zero) are "undefined" and
    carry kappa = xi = 0 sentinels.  |S3/S0| may exceed 1 by at most
    CLAMP_TOLERANCE (roundoff); larger overshoot raises ValueError rather
    than being clamped silently.
    """
    s0 = np.asarray(s.s0, dtype=float)
    scalar = s0.ndim == 0
    s0 = np.atleast_1d(s0)
    s1 = np.broadcast_to(np.asarray(s.s1, dtype=float), s0.shape)
    s2 = np.broadcast_to(np.asarray(s.s2, dtype=float), s0.shape)
    s3 = np.broadcast_to(np.asarray(s.s3, dtype=float), s0.shape)
    defined = (s0 >= floor) & (s0 > 0.0)
    ratio = np.where(defined, s3, 0.0) / np.where(defined, s0, 1.0)
    overshoot = np.max(np.abs(ratio)) - 1.0
    if overshoot > CLAMP_TOLERANCE:
        raise ValueError(f"|S3/S0| exceeds 1 by {overshoot:.3e}; inputs are not "
                         "a physical Stokes vector")
    ratio = np.clip(ratio, -1.0, 1.0)
    kappa = np.where(defined, 0.5 * np.arcsin(ratio), 0.0)
    xi = np.where(defined, 0.5 * np.arctan2(s2, s1), 0.0)

    klass = np.full(s0.shape, "elliptical", dtype="<U14")
    klass[~defined] = "undefined"
    linear = defined & (np.abs(kappa) <= KAPPA_MARGIN)
    circular = defined & (np.abs(kappa) >= np.pi / 4 - KAPPA_MARGIN)
    klass[linear] = "linear"
    klass[circular & (kappa < 0)] = "left-circular"
    klass[circular & (kappa >= 0)] = "right-circular"
    if scalar:
        return PolarizationState(float(kappa[0]), float(xi[0]), str(klass[0]))
    return PolarizationState(kappa, xi, klass)


def fields_at_z(r, phi, spec, theta: float, q: complex, z) -> tuple:
    """Transmitted circular pair (E_R, E_L) of the configured beam at depth z."""
    out = propagate_analytic(initial_fields(r, phi, spec), q, theta, z)
    return out.omega_r, out.omega_l


def _config_q(config: ScenarioConfig, delta: float | None = None) -> complex:
    d = config.drive.delta if delta is None else float(delta)
    return q_factor(d, config.drive.delta_c, config.drive.omega_c,
                    config.atom, config.zeta)


@dataclass(frozen=True)
class TextureSlice:
    """Flattened polarization texture at one depth (outer-coordinate-major)."""

    z: float
    x: np.ndarray
    y: np.ndarray
    s0: np.ndarray       # normalized to the slice maximum
    kappa: np.ndarray
    xi: np.ndarray
    klass: np.ndarray


def texture_map(grid: TransverseGrid, config: ScenarioConfig,
                z_list) -> list[TextureSlice]:
    """Polarization texture of the configured scenario at each listed depth.

    Per slice, S0 is normalized to its maximum and the undefined floor is
    INTENSITY_FLOOR_FRACTION of that maximum.
    """
    r, phi, x, y = grid.points()
    q = _config_q(config)
    theta = config.phaseonium.theta
    entrance = initial_fields(r, phi, config.beam)
    slices = []
    for z in z_list:
        pair = propagate_analytic(entrance, q, theta, float(z))
        s = stokes(pair.omega_r, pair.omega_l)
        peak = float(np.max(s.s0))
        state = polarization_state(s, floor=INTENSITY_FLOOR_FRACTION * peak)
        s0_norm = s.s0 / peak if peak > 0 else np.zeros_like(s.s0)
        slices.append(TextureSlice(z=float(z), x=x, y=y, s0=s0_norm,
                                   kappa=state.kappa, xi=state.xi,
                                   klass=state.klass))
    return slices


def variant_config(config: ScenarioConfig, theta: float,
                   psi: float) -> ScenarioConfig:
    """Config with the phaseonium angle and beam relative phase replaced."""
    return replace(config,
                   beam=replace(config.beam, psi=float(psi)),
                   phaseonium=replace(config.phaseonium, theta=float(theta)))


def average_ellipticity(grid: TransverseGrid, config: ScenarioConfig, z: float,
                        delta: float | None = None) -> float:
    """Mean kappa over grid points above the intensity floor at depth z.

    ``delta`` overrides the configured probe detuning (used by sweeps).
    Raises ValueError when no point clears the floor.
    """
    r, phi, _, _ = grid.points()
    q = _config_q(config, delta)
    e_r, e_l = fields_at_z(r, phi, config.beam, config.phaseonium.theta, q, float(z))
    s = stokes(e_r, e_l)
    floor = INTENSITY_FLOOR_FRACTION * float(np.max(s.s0))
    state = polarization_state(s, floor=floor)
    included = (np.asarray(s.s0) >= floor) & (np.asarray(s.s0) > 0.0)
    if not np.any(included):
        raise ValueError("no grid point above the intensity floor; nothing to average")
    return float(np.mean(state.kappa[included]))


def ellipticity_sweep(config: ScenarioConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Grid-averaged kappa over the configured depth x detuning raster.

    Returns (z_values, delta_values, avg) with avg shaped (n_z, n_delta);
    each cell equals average_ellipticity on the sweep grid.  Vectorized over
    depth for speed; requires config.polarization.sweep.
    """
    sweep = config.polarization.sweep
    if sweep is None:
        raise ValueError("config has no polarization.sweep section")
    grid = sweep.grid.to_grid()
    r, phi, _, _ = grid.points()
    z = sweep.z.values()
    deltas = sweep.delta.values()
    entrance = initial_fields(r, phi, config.beam)
    theta = config.phaseonium.theta
    avg = np.empty((z.size, deltas.size), dtype=float)
    for j, dv in enumerate(deltas):
        q = _config_q(config, float(dv))
        pair = propagate_analytic(FieldPair(entrance.omega_r[None, :],
                                            entrance.omega_l[None, :]),
                                  q, theta, z[:, None])
        s = stokes(pair.omega_r, pair.omega_l)
        floor = INTENSITY_FLOOR_FRACTION * np.max(s.s0, axis=1, keepdims=True)
        state = polarization_state(s, floor=0.0)  # per-row floor applied below
        included = (s.s0 >= floor) & (s.s0 > 0.0)
        kappa = np.where(included, state.kappa, 0.0)
        counts = included.sum(axis=1)
        if np.any(counts == 0):
            raise ValueError("sweep row with no point above the intensity floor")
        avg[:, j] = kappa.sum(axis=1) / counts
    return z, deltas, avg


def petal_count(grid: TransverseGrid, config: ScenarioConfig, z: float) -> int:
    """Number of azimuthal total-intensity petals on the brightest ring.

    Takes the azimuthal S0 profile at the radius of the global maximum,
    applies a circular 3-sample moving average, and counts strict local
    maxima (exceeding both neighbours by more than 1e-9 of the profile
    maximum).  A flat profile therefore counts zero petals.  Polar grids
    only; needs at least 8 azimuthal samples.
    """
    if grid.mode != "polar":
        raise ValueError("petal counting requires a polar grid")
    n_r, n_phi = grid.shape
    if n_phi < 8:
        raise ValueError("petal counting needs at least 8 azimuthal samples")
    r, phi, _, _ = grid.points()
    q = _config_q(config)
    e_r, e_l = fields_at_z(r, phi, config.beam, config.phaseonium.theta, q, float(z))
    s0 = np.asarray(stokes(e_r, e_l).s0).reshape(n_r, n_phi)
    ring = s0[np.unravel_index(np.argmax(s0), s0.shape)[0]]
    sm = (np.roll(ring, 1) + ring + np.roll(ring, -1)) / 3.0
    tol = 1e-9 * float(np.max(sm))
    up = sm > np.roll(sm, 1) + tol
    down = sm > np.roll(sm, -1) + tol
    return int(np.count_nonzero(up & down))
