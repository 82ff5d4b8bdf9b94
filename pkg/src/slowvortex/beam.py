"""Input vector-vortex beam: LG radial profile, helical phases, weighting.

The entrance field is a superposition of two circularly polarized
Laguerre-Gaussian components with opposite topological charge,

    Omega_R(r, phi) = eps_R * A(r) * exp(+i l phi),
    Omega_L(r, phi) = eps_L * A(r) * exp(-i l phi),

where A(r) = (r/w)^|l| exp(-r^2/w^2) is the (unnormalized) lowest-radial-index
LG amplitude and the complex weights

    eps_L = eps * cos(alpha),    eps_R = eps * sin(alpha) * exp(i psi)

tune the power split and relative phase of the two components.  All amplitudes
are Rabi frequencies in units of Gamma; transverse lengths are in units of the
waist w.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BeamSpec",
    "FieldPair",
    "TransverseGrid",
    "initial_fields",
    "lg_radial_amplitude",
    "peak_radial_amplitude",
    "weighting",
]


@dataclass(frozen=True)
class BeamSpec:
    """Input vector-vortex parameters (l, w, eps, alpha, psi)."""

    l: int = 1             # topological charge; sign carries the vorticity
    w: float = 1.0         # beam waist; all transverse coordinates are in units of w
    epsilon: float = 1.0   # overall Rabi amplitude scale (units of Gamma)
    alpha: float = np.pi / 4   # amplitude tuning angle
    psi: float = 0.0       # relative phase between components at z=0

    def __post_init__(self):
        if not self.w > 0:
            raise ValueError(f"beam waist must be positive, got {self.w}")
        if self.epsilon < 0:
            raise ValueError(f"amplitude scale must be >= 0, got {self.epsilon}")
        # alpha outside [0, pi/2] is accepted; the trigonometric weighting
        # reduces it without error.


@dataclass(frozen=True)
class FieldPair:
    """Complex Rabi-amplitude pair (Omega_R, Omega_L) at a point (or grid)."""

    omega_r: complex | np.ndarray
    omega_l: complex | np.ndarray


def _strictly_increasing(a: np.ndarray) -> bool:
    return a.size < 2 or bool(np.all(np.diff(a) > 0))


@dataclass(frozen=True)
class TransverseGrid:
    """Transverse sampling grid, polar (r x phi) or Cartesian (x x y).

    Coordinate lists are strictly increasing; azimuthal samples lie in
    [0, 2*pi).  Cartesian coordinates convert to (r, phi) via atan2 with phi
    mapped into [0, 2*pi) so azimuthal indexing is deterministic.
    """

    mode: str              # "polar" or "cartesian"
    first: np.ndarray      # r (polar) or x (cartesian); the outer coordinate
    second: np.ndarray     # phi (polar) or y (cartesian); the inner coordinate

    def __post_init__(self):
        if self.mode not in ("polar", "cartesian"):
            raise ValueError(f"unknown grid mode {self.mode!r}")
        object.__setattr__(self, "first", np.asarray(self.first, dtype=float))
        object.__setattr__(self, "second", np.asarray(self.second, dtype=float))
        for name, coord in (("outer", self.first), ("inner", self.second)):
            if coord.ndim != 1 or coord.size == 0:
                raise ValueError(f"{name} coordinate list must be a nonempty 1-d array")
            if not _strictly_increasing(coord):
                raise ValueError(f"{name} coordinate list must be strictly increasing")
        if self.mode == "polar":
            if self.first[0] < 0:
                raise ValueError("radial samples must be >= 0")
            if self.second[0] < 0 or self.second[-1] >= 2 * np.pi:
                raise ValueError("azimuthal samples must lie in [0, 2*pi)")

    @classmethod
    def polar(cls, r, phi) -> "TransverseGrid":
        return cls("polar", np.asarray(r, dtype=float), np.asarray(phi, dtype=float))

    @classmethod
    def cartesian(cls, x, y) -> "TransverseGrid":
        return cls("cartesian", np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def points(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Flattened (r, phi, x, y) meshes in outer-coordinate-major order."""
        a, b = np.meshgrid(self.first, self.second, indexing="ij")
        a = a.ravel()
        b = b.ravel()
        if self.mode == "polar":
            r, phi = a, b
            x = r * np.cos(phi)
            y = r * np.sin(phi)
        else:
            x, y = a, b
            r = np.hypot(x, y)
            phi = np.mod(np.arctan2(y, x), 2 * np.pi)
        return r, phi, x, y

    @property
    def shape(self) -> tuple[int, int]:
        return self.first.size, self.second.size


def lg_radial_amplitude(r, spec: BeamSpec):
    """Unnormalized LG radial profile A(r) = (r/w)^|l| exp(-r^2/w^2).

    Dimensionless and >= 0; peaks at r = w*sqrt(|l|/2) for |l| >= 1.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radial coordinate must be >= 0")
    u = r / spec.w
    out = u ** abs(spec.l) * np.exp(-u * u)
    return out if out.ndim else float(out)


def peak_radial_amplitude(spec: BeamSpec) -> float:
    """Maximum of A(r) over r >= 0: A(w*sqrt(|l|/2)), i.e. 1.0 for l = 0."""
    return lg_radial_amplitude(spec.w * np.sqrt(abs(spec.l) / 2.0), spec)


def weighting(spec: BeamSpec) -> tuple[complex, complex]:
    """Component weights (eps_L, eps_R) = (eps*cos(alpha), eps*sin(alpha)*e^{i psi})."""
    eps_l = complex(spec.epsilon * np.cos(spec.alpha))
    eps_r = spec.epsilon * np.sin(spec.alpha) * np.exp(1j * spec.psi)
    return eps_l, eps_r


def initial_fields(r, phi, spec: BeamSpec) -> FieldPair:
    """Entrance Rabi amplitudes Omega_R = eps_R A e^{+il phi}, Omega_L = eps_L A e^{-il phi}."""
    amp = lg_radial_amplitude(r, spec)
    eps_l, eps_r = weighting(spec)
    phase = np.exp(1j * spec.l * np.asarray(phi, dtype=float))
    omega_r = eps_r * amp * phase
    omega_l = eps_l * amp * np.conj(phase)
    if np.ndim(omega_r) == 0:
        return FieldPair(complex(omega_r), complex(omega_l))
    return FieldPair(omega_r, omega_l)
