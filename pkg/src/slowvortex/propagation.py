"""Steady-state field propagation through the phaseonium-prepared medium.

In the weak-probe steady state the circular field pair obeys

    d/dz (Omega_R, Omega_L) = -i K (Omega_R, Omega_L),
    K = Q * [[cos^2 t, sin t cos t], [sin t cos t, sin^2 t]],

with t the phaseonium mixing angle and Q the control-dressed complex response
factor.  K is Q times a rank-1 projector, so the "bright" combination
cos(t) Omega_R + sin(t) Omega_L evolves as e^{-iQz} while the orthogonal
"dark" combination is strictly conserved; the closed form

    exp(-iKz) = I + (e^{-iQz} - 1) P

propagates any input pair.  A fixed-step RK4 oracle integrates the same linear
system directly for cross-validation.  Depth is the dimensionless zeta*z
(zeta defaults to 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beam import BeamSpec, FieldPair, lg_radial_amplitude
from .bloch import AtomParams, SingularityError, _resonant_denominator

__all__ = [
    "MediumResponse",
    "coupling_matrix",
    "dark_bright_decompose",
    "propagate_analytic",
    "propagate_numeric",
    "propagate_symmetric",
    "q_factor",
]


@dataclass(frozen=True)
class MediumResponse:
    """Complex response factor Q together with the medium strength scale zeta."""

    q: complex
    zeta: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.q):
            raise ValueError("response factor must be finite")
        if not self.zeta > 0:
            raise ValueError("zeta must be positive")


def q_factor(delta: float, delta_c: float, omega_c: complex,
             atom: AtomParams, zeta: float = 1.0) -> complex:
    """Response factor Q = zeta / (Delta - |Oc|^2/(Delta - Dc + 2i gd) + i(Gamma + gd)).

    Both probe components share the two-photon detuning Delta; only |Omega_C|^2
    enters, so the control phase is irrelevant.  Raises SingularityError when
    the denominator vanishes (possible only for Gamma = gamma_d = 0).
    """
    return zeta / _resonant_denominator(delta, delta_c, omega_c, atom)


def coupling_matrix(q: complex, theta: float) -> np.ndarray:
    """2x2 coupling matrix K = Q * projector onto (cos t, sin t)."""
    c, s = np.cos(theta), np.sin(theta)
    return q * np.array([[c * c, s * c], [s * c, s * s]], dtype=complex)


def propagate_analytic(fields0: FieldPair, q: complex, theta: float, z) -> FieldPair:
    """Closed-form solution exp(-iKz) applied to the entrance pair.

    Broadcasts over array-valued field components, q, and z.
    """
    c, s = np.cos(theta), np.sin(theta)
    decay = np.exp(-1j * np.asarray(q) * np.asarray(z)) - 1.0
    bright = c * fields0.omega_r + s * fields0.omega_l
    omega_r = fields0.omega_r + c * decay * bright
    omega_l = fields0.omega_l + s * decay * bright
    if np.ndim(omega_r) == 0:
        return FieldPair(complex(omega_r), complex(omega_l))
    return FieldPair(omega_r, omega_l)


def propagate_symmetric(r, phi, spec: BeamSpec, q: complex, z) -> FieldPair:
    """Depth-z pair for the balanced configuration (theta = alpha = pi/4, psi = 0).

    Omega_{R,L} = Om0 * (e^{-iQz} cos(l phi) +/- i sin(l phi)) with the common
    entrance magnitude Om0 = eps * A(r) / sqrt(2), matching initial_fields for
    the balanced weighting (equal split of eps over the two components).
    """
    amp = spec.epsilon * lg_radial_amplitude(r, spec) / np.sqrt(2.0)
    u = spec.l * np.asarray(phi, dtype=float)
    c, s = np.cos(u), np.sin(u)
    decay = np.exp(-1j * np.asarray(q) * np.asarray(z))
    omega_r = amp * (decay * c + 1j * s)
    omega_l = amp * (decay * c - 1j * s)
    if np.ndim(omega_r) == 0:
        return FieldPair(complex(omega_r), complex(omega_l))
    return FieldPair(omega_r, omega_l)


def propagate_numeric(fields0: FieldPair, coupling: np.ndarray, z: float,
                      dz: float = 0.01) -> FieldPair:
    """Fixed-step RK4 integration of d(Omega)/dz = -i K Omega (oracle path).

    Accepts a single 2x2 coupling matrix or a batch of shape (..., 2, 2) with
    matching field-component shapes.  Steps n = ceil(z/dz) with h = z/n so the
    endpoint is exact.
    """
    if dz <= 0:
        raise ValueError("dz must be positive")
    k = np.asarray(coupling, dtype=complex)
    y = np.stack([np.asarray(fields0.omega_r, dtype=complex),
                  np.asarray(fields0.omega_l, dtype=complex)], axis=-1)[..., None]
    if z == 0:
        out = y[..., 0]
        if out.shape == (2,):
            return FieldPair(complex(out[0]), complex(out[1]))
        return FieldPair(out[..., 0], out[..., 1])
    n = max(1, int(np.ceil(abs(z) / dz)))
    h = z / n
    a = -1j * k
    for _ in range(n):
        k1 = a @ y
        k2 = a @ (y + 0.5 * h * k1)
        k3 = a @ (y + 0.5 * h * k2)
        k4 = a @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out = y[..., 0]
    if out.shape == (2,):
        return FieldPair(complex(out[0]), complex(out[1]))
    return FieldPair(out[..., 0], out[..., 1])


def dark_bright_decompose(fields: FieldPair, theta: float) -> tuple[complex, complex]:
    """Coupled/conserved mode amplitudes (bright, dark) of the field pair.

    bright = cos(t) Omega_R + sin(t) Omega_L couples to the medium with
    eigenvalue Q; dark = sin(t) Omega_R - cos(t) Omega_L spans the null space
    of K and is z-invariant.  The inverse map is the transpose rotation.
    """
    c, s = np.cos(theta), np.sin(theta)
    bright = c * fields.omega_r + s * fields.omega_l
    dark = s * fields.omega_r - c * fields.omega_l
    return bright, dark
