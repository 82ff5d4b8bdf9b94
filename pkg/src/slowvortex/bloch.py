"""Four-level tripod master equation and first-order steady coherences.

States |1>, |2>, |3> are ground levels coupled to the shared excited state |4>
by the right/left probe components (Omega_R, Omega_L) and the control field
Omega_C.  Radiative decay feeds |4> -> |j> at rates gamma_4j (Gamma is half
their sum), while ground-state collisions dephase and redistribute the ground
manifold at a rate gamma_d.  The medium is prepared in the pure "phaseonium"
superposition cos(theta)|1> + sin(theta)|2>.

The explicit Bloch system implemented here is exactly trace-annihilating by
construction: the excited-state population is closed through
rho44 = 1 - rho11 - rho22 - rho33 and the lower triangle through Hermiticity.
Everything is expressed in units of Gamma (hbar = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "AtomParams",
    "DriveParams",
    "IntegrationError",
    "SingularityError",
    "SteadyCoherences",
    "bloch_rhs",
    "density_residuals",
    "hamiltonian_rwa",
    "initial_density",
    "integrate_master",
    "steady_coherences_first_order",
]


class SingularityError(ValueError):
    """A response denominator vanished (possible only for Gamma = gamma_d = 0)."""


class IntegrationError(RuntimeError):
    """Fixed-step integration became unstable (trace drift exceeded tolerance)."""


@dataclass(frozen=True)
class AtomParams:
    """Radiative decay rates gamma_4j and ground-state dephasing rate gamma_d.

    Defaults split the total radiative rate symmetrically,
    gamma_41 = gamma_42 = gamma_43 = 2/3, so that the derived
    Gamma = (gamma_41 + gamma_42 + gamma_43)/2 equals 1 in Gamma units.
    """

    gamma_41: float = 2.0 / 3.0
    gamma_42: float = 2.0 / 3.0
    gamma_43: float = 2.0 / 3.0
    gamma_d: float = 0.0

    def __post_init__(self):
        for name in ("gamma_41", "gamma_42", "gamma_43", "gamma_d"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def Gamma(self) -> float:
        """Half the summed radiative rate; never set independently."""
        return 0.5 * (self.gamma_41 + self.gamma_42 + self.gamma_43)


@dataclass(frozen=True)
class DriveParams:
    """Complex Rabi frequencies and detunings of the three optical fields."""

    omega_r: complex = 0j
    omega_l: complex = 0j
    omega_c: complex = 0j
    delta_1: float = 0.0
    delta_2: float = 0.0
    delta_c: float = 0.0

    def __post_init__(self):
        values = (self.omega_r, self.omega_l, self.omega_c,
                  self.delta_1, self.delta_2, self.delta_c)
        if not all(np.isfinite(v) for v in values):
            raise ValueError("drive parameters must be finite")


def initial_density(theta: float) -> np.ndarray:
    """Pure phaseonium density matrix cos(theta)|1> + sin(theta)|2>."""
    c, s = np.cos(theta), np.sin(theta)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = c * c
    rho[1, 1] = s * s
    rho[0, 1] = rho[1, 0] = s * c
    return rho


def hamiltonian_rwa(drive: DriveParams) -> np.ndarray:
    """Rotating-frame Hamiltonian: diag(-D1, -D2, -Dc, 0) plus field couplings."""
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = -drive.delta_1
    h[1, 1] = -drive.delta_2
    h[2, 2] = -drive.delta_c
    h[0, 3] = drive.omega_r
    h[1, 3] = drive.omega_l
    h[2, 3] = drive.omega_c
    h[3, 0] = np.conj(drive.omega_r)
    h[3, 1] = np.conj(drive.omega_l)
    h[3, 2] = np.conj(drive.omega_c)
    return h


def bloch_rhs(rho: np.ndarray, drive: DriveParams, atom: AtomParams) -> np.ndarray:
    """Right-hand side d(rho)/dt of the explicit Bloch system.

    The excited population entering the relaxation and saturation terms is the
    closure value rho44 = 1 - rho11 - rho22 - rho33 (the stored [3, 3] entry is
    not read), the rho44 rate is minus the summed ground rates, and the lower
    triangle is the conjugate of the upper one — so Tr(d rho/dt) = 0 and
    Hermiticity hold exactly, not merely to roundoff of independent formulas.
    """
    wr, wl, wc = drive.omega_r, drive.omega_l, drive.omega_c
    d1, d2, dc = drive.delta_1, drive.delta_2, drive.delta_c
    gd = atom.gamma_d
    gtot = atom.Gamma + gd

    r11 = rho[0, 0].real
    r22 = rho[1, 1].real
    r33 = rho[2, 2].real
    r44 = 1.0 - r11 - r22 - r33
    p12, p13, p14 = rho[0, 1], rho[0, 2], rho[0, 3]
    p23, p24, p34 = rho[1, 2], rho[1, 3], rho[2, 3]
    p21, p31, p41 = rho[1, 0], rho[2, 0], rho[3, 0]
    p32, p42, p43 = rho[2, 1], rho[3, 1], rho[3, 2]

    d11 = (1j * (np.conj(wr) * p14 - wr * p41)).real + atom.gamma_41 * r44 \
        + gd * (r22 + r33 - 2.0 * r11)
    d22 = (1j * (np.conj(wl) * p24 - wl * p42)).real + atom.gamma_42 * r44 \
        + gd * (r11 + r33 - 2.0 * r22)
    d33 = (1j * (np.conj(wc) * p34 - wc * p43)).real + atom.gamma_43 * r44 \
        + gd * (r11 + r22 - 2.0 * r33)
    d12 = 1j * (p12 * (d1 - d2) + np.conj(wl) * p14 - wl * p41) - 2.0 * gd * p12
    d13 = 1j * (p13 * (d1 - dc) + np.conj(wc) * p14 - wr * p43) - 2.0 * gd * p13
    d14 = 1j * (wr * r11 + wl * p12 + wc * p13 + d1 * p14) - 1j * wr * r44 - gtot * p14
    d23 = 1j * (p23 * (d2 - dc) + np.conj(wc) * p24 - wl * p43) - 2.0 * gd * p23
    d24 = 1j * (wr * p21 + wl * r22 + wc * p23 + d2 * p24) - 1j * wl * r44 - gtot * p24
    d34 = 1j * (wr * p31 + wl * p32 + wc * r33 + dc * p34) - 1j * wc * r44 - gtot * p34

    out = np.empty((4, 4), dtype=complex)
    out[0, 0] = d11
    out[1, 1] = d22
    out[2, 2] = d33
    out[3, 3] = -(d11 + d22 + d33)
    out[0, 1] = d12
    out[0, 2] = d13
    out[0, 3] = d14
    out[1, 2] = d23
    out[1, 3] = d24
    out[2, 3] = d34
    out[1, 0] = np.conj(d12)
    out[2, 0] = np.conj(d13)
    out[3, 0] = np.conj(d14)
    out[2, 1] = np.conj(d23)
    out[3, 1] = np.conj(d24)
    out[3, 2] = np.conj(d34)
    return out


def integrate_master(rho0: np.ndarray, drive: DriveParams, atom: AtomParams,
                     t_final: float, dt: float = 1e-3) -> np.ndarray:
    """Fixed-step RK4 evolution of the Bloch system over [0, t_final].

    The step count is n = round(t_final/dt) (at least 1) with h = t_final/n so
    the endpoint is hit exactly.  Trace drift > 1e-6 at any step raises
    IntegrationError; no silent renormalization is performed.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    rho = np.array(rho0, dtype=complex)
    if t_final == 0:
        return rho
    n = max(1, int(round(t_final / dt)))
    h = t_final / n
    for _ in range(n):
        k1 = bloch_rhs(rho, drive, atom)
        k2 = bloch_rhs(rho + 0.5 * h * k1, drive, atom)
        k3 = bloch_rhs(rho + 0.5 * h * k2, drive, atom)
        k4 = bloch_rhs(rho + h * k3, drive, atom)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = abs(rho[0, 0] + rho[1, 1] + rho[2, 2] + rho[3, 3] - 1.0)
        if drift > 1e-6:
            raise IntegrationError(
                f"trace drift {drift:.3e} exceeds 1e-6; reduce dt")
    return rho


def density_residuals(rho: np.ndarray) -> dict[str, float]:
    """Deviations of rho from the Hermitian / unit-trace / real-diagonal contract."""
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    trace = abs(complex(np.trace(rho)) - 1.0)
    diag = np.diagonal(rho)
    diag_real = float(np.max(np.abs(diag.imag)))
    diag_range = float(max(np.max(-diag.real), np.max(diag.real - 1.0), 0.0))
    return {"hermiticity": herm, "trace": trace,
            "diag_imag": diag_real, "diag_range": diag_range}


class SteadyCoherences(NamedTuple):
    rho14: complex
    rho24: complex
    rho41: complex
    rho42: complex


def _resonant_denominator(delta: float, delta_c: float, omega_c: complex,
                          atom: AtomParams) -> complex:
    """Common denominator D = Delta - |Oc|^2/(Delta - Dc + 2i gd) + i(Gamma + gd)."""
    gd = atom.gamma_d
    oc2 = abs(omega_c) ** 2
    if oc2 > 0.0:
        inner = delta - delta_c + 2j * gd
        if abs(inner) < 1e-300:
            raise SingularityError(
                "two-photon denominator vanished (Gamma = gamma_d = 0 corner)")
        raman = oc2 / inner
    else:
        raman = 0j
    den = delta - raman + 1j * (atom.Gamma + gd)
    if abs(den) < 1e-300:
        raise SingularityError("response denominator vanished")
    return den


def steady_coherences_first_order(drive: DriveParams, atom: AtomParams,
                                  theta: float) -> SteadyCoherences:
    """First-order quasi-steady optical coherences of the phaseonium medium.

    rho14 = -(Omega_R cos^2 t + Omega_L sin t cos t) / D(Delta_1) and the
    2<->4 analog with D(Delta_2); D is the control-dressed resonant
    denominator.  Valid for probes much weaker than Omega_C (not enforced).
    """
    c, s = np.cos(theta), np.sin(theta)
    den1 = _resonant_denominator(drive.delta_1, drive.delta_c, drive.omega_c, atom)
    den2 = _resonant_denominator(drive.delta_2, drive.delta_c, drive.omega_c, atom)
    rho14 = -(drive.omega_r * c * c + drive.omega_l * s * c) / den1
    rho24 = -(drive.omega_r * s * c + drive.omega_l * s * s) / den2
    return SteadyCoherences(rho14, rho24, np.conj(rho14), np.conj(rho24))
