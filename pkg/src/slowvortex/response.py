"""Normalized complex susceptibilities of the two circular probe components.

Because both components share one resonant response factor Q, the local
susceptibility seen by each component is Q-hat times a field-ratio weight,

    chi_R = (Q/zeta) (cos^2 t + (Omega_L/Omega_R) sin t cos t),
    chi_L = (Q/zeta) ((Omega_R/Omega_L) sin t cos t + sin^2 t),

with t the phaseonium angle (chi is reported in units of 2 c zeta / omega).
Where a component's magnitude falls below the validity floor the ratio is
meaningless and the value is flagged invalid (complex-NaN sentinel).

For the balanced configuration the ratios collapse to a closed azimuthal
form,

    chi_{R,L} = (Q/zeta) E cos(l phi) / (E cos(l phi) +/- i sin(l phi)),
    E = exp(-i Q z),

which carries the exact symmetries chi(phi + 2 pi/l) = chi(phi) and
chi_L(phi) = chi_R(-phi) used for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beam import FieldPair, initial_fields, peak_radial_amplitude
from .config import ScenarioConfig
from .propagation import propagate_analytic, q_factor

__all__ = [
    "ResponseMap",
    "SusceptibilityPoint",
    "dispersion_slope",
    "response_map",
    "susceptibility_general",
    "susceptibility_symmetric",
    "validity_floor",
]

_CNAN = complex(float("nan"), float("nan"))

#: Fields weaker than this fraction of the entrance peak give no meaningful ratio.
VALIDITY_FRACTION = 1e-12


@dataclass(frozen=True)
class SusceptibilityPoint:
    """Per-component susceptibilities with validity flags (scalars or arrays)."""

    chi_r: complex | np.ndarray
    chi_l: complex | np.ndarray
    valid_r: bool | np.ndarray
    valid_l: bool | np.ndarray


def _finish(chi_r, chi_l, valid_r, valid_l) -> SusceptibilityPoint:
    if np.ndim(chi_r) == 0 and np.ndim(valid_r) == 0:
        return SusceptibilityPoint(complex(chi_r), complex(chi_l),
                                   bool(valid_r), bool(valid_l))
    shape = np.broadcast_shapes(np.shape(chi_r), np.shape(valid_r))
    return SusceptibilityPoint(np.broadcast_to(chi_r, shape),
                               np.broadcast_to(chi_l, shape),
                               np.broadcast_to(valid_r, shape),
                               np.broadcast_to(valid_l, shape))


def susceptibility_general(fields: FieldPair, q: complex, theta: float,
                           zeta: float = 1.0, floor: float | None = None
                           ) -> SusceptibilityPoint:
    """chi for an arbitrary field pair via the component ratios.

    ``floor`` is the absolute validity threshold on a component magnitude;
    when omitted it defaults to VALIDITY_FRACTION times the largest magnitude
    present in the input pair.  Invalid entries carry complex-NaN.
    """
    qhat = np.asarray(q) / zeta
    c, s = np.cos(theta), np.sin(theta)
    wr = np.asarray(fields.omega_r)
    wl = np.asarray(fields.omega_l)
    mag_r, mag_l = np.abs(wr), np.abs(wl)
    if floor is None:
        floor = VALIDITY_FRACTION * max(float(np.max(mag_r)), float(np.max(mag_l)))
    valid_r = (mag_r >= floor) & (mag_r > 0.0)
    valid_l = (mag_l >= floor) & (mag_l > 0.0)
    ratio_lr = np.where(valid_r, wl, 0.0) / np.where(valid_r, wr, 1.0)
    ratio_rl = np.where(valid_l, wr, 0.0) / np.where(valid_l, wl, 1.0)
    chi_r = np.where(valid_r, qhat * (c * c + s * c * ratio_lr), _CNAN)
    chi_l = np.where(valid_l, qhat * (s * c * ratio_rl + s * s), _CNAN)
    return _finish(chi_r, chi_l, valid_r, valid_l)


def susceptibility_symmetric(phi, l: int, q: complex, z,
                             zeta: float = 1.0) -> SusceptibilityPoint:
    """Closed azimuthal chi for the balanced configuration (t = a = pi/4, psi = 0).

    Validity requires |E cos(l phi) +/- i sin(l phi)| >= 1e-12 (the component
    zero lines after the coupled part has decayed).
    """
    u = np.multiply(float(l), np.asarray(phi, dtype=float))
    c, s = np.cos(u), np.sin(u)
    decay = np.exp(-1j * np.asarray(q) * np.asarray(z))
    num = (np.asarray(q) / zeta) * decay * c
    den_r = decay * c + 1j * s
    den_l = decay * c - 1j * s
    valid_r = np.abs(den_r) >= 1e-12
    valid_l = np.abs(den_l) >= 1e-12
    chi_r = np.where(valid_r, num, _CNAN) / np.where(valid_r, den_r, 1.0)
    chi_l = np.where(valid_l, num, _CNAN) / np.where(valid_l, den_l, 1.0)
    return _finish(chi_r, chi_l, valid_r, valid_l)


def validity_floor(config: ScenarioConfig) -> float:
    """Absolute field-magnitude threshold below which chi ratios are invalid."""
    return VALIDITY_FRACTION * config.beam.epsilon * peak_radial_amplitude(config.beam)


def _chi_at(config: ScenarioConfig, phi, delta: float) -> SusceptibilityPoint:
    """chi of the configured beam at the response-evaluation point (r, z)."""
    q = q_factor(delta, config.drive.delta_c, config.drive.omega_c,
                 config.atom, config.zeta)
    entrance = initial_fields(config.response.r, phi, config.beam)
    at_depth = propagate_analytic(entrance, q, config.phaseonium.theta,
                                  config.response.z)
    return susceptibility_general(at_depth, q, config.phaseonium.theta,
                                  config.zeta, validity_floor(config))


@dataclass(frozen=True)
class ResponseMap:
    """chi over an azimuth x detuning raster (arrays shaped (n_phi, n_delta))."""

    phi: np.ndarray
    delta: np.ndarray
    chi_r: np.ndarray
    chi_l: np.ndarray
    valid_r: np.ndarray
    valid_l: np.ndarray


def response_map(phi: np.ndarray, delta: np.ndarray,
                 config: ScenarioConfig) -> ResponseMap:
    """Evaluate chi on phi x delta at the configured (r, z), sign parity applied."""
    phi = np.asarray(phi, dtype=float)
    delta = np.asarray(delta, dtype=float)
    chi_r = np.empty((phi.size, delta.size), dtype=complex)
    chi_l = np.empty_like(chi_r)
    valid_r = np.empty(chi_r.shape, dtype=bool)
    valid_l = np.empty_like(valid_r)
    for j, dv in enumerate(delta):
        point = _chi_at(config, phi, float(dv))
        chi_r[:, j] = point.chi_r
        chi_l[:, j] = point.chi_l
        valid_r[:, j] = point.valid_r
        valid_l[:, j] = point.valid_l
    parity = config.parity()
    return ResponseMap(phi=phi, delta=delta, chi_r=parity * chi_r,
                       chi_l=parity * chi_l, valid_r=valid_r, valid_l=valid_l)


def dispersion_slope(phi: float, config: ScenarioConfig, h: float = 1e-3,
                     component: str = "r") -> float:
    """Central-difference slope of Re(chi) in Delta at Delta = 0.

    Uses the configured evaluation point and sign parity.  Raises ValueError
    when either stencil point is invalid or the component name is unknown.
    """
    if h <= 0:
        raise ValueError("stencil half-width h must be positive")
    if component not in ("r", "l"):
        raise ValueError(f"component must be 'r' or 'l', got {component!r}")
    hi = _chi_at(config, float(phi), +h)
    lo = _chi_at(config, float(phi), -h)
    ok = (hi.valid_r and lo.valid_r) if component == "r" else (hi.valid_l and lo.valid_l)
    if not ok:
        raise ValueError("dispersion stencil hit an invalid (vanishing-field) point")
    chi_hi = hi.chi_r if component == "r" else hi.chi_l
    chi_lo = lo.chi_r if component == "r" else lo.chi_l
    return config.parity() * float((chi_hi.real - chi_lo.real) / (2.0 * h))
