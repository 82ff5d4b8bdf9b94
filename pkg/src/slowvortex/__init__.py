"""Slow-light vector vortex propagation in a coherently prepared tripod medium.

The package models a weak optical vector vortex (two circular components
carrying opposite orbital angular momentum) propagating through a four-level
tripod atomic vapor whose two probed ground states are prepared in a coherent
"phaseonium" superposition.  It provides:

- the input beam model (LG radial profile, helical phases, component weighting),
- the atomic master equation (RWA Hamiltonian, full Bloch system, first-order
  steady coherences) with a brute-force integration oracle,
- the analytic field propagation (response factor Q, rank-1 coupling matrix,
  dark/bright decomposition) with an independent numerical oracle,
- azimuth- and detuning-resolved susceptibility maps,
- Stokes polarimetry: ellipticity/orientation maps, petal counting,
  cross-section-averaged ellipticity sweeps,
- a deterministic CLI that emits CSV tables with JSON config sidecars.

All frequencies are expressed in units of the radiative rate Γ, transverse
lengths in units of the beam waist w, and propagation depth as the
dimensionless ζz.
"""

from .beam import (
    BeamSpec,
    FieldPair,
    TransverseGrid,
    initial_fields,
    lg_radial_amplitude,
    peak_radial_amplitude,
    weighting,
)
from .bloch import (
    AtomParams,
    DriveParams,
    IntegrationError,
    SingularityError,
    bloch_rhs,
    hamiltonian_rwa,
    initial_density,
    integrate_master,
    steady_coherences_first_order,
)
from .propagation import (
    MediumResponse,
    coupling_matrix,
    dark_bright_decompose,
    propagate_analytic,
    propagate_numeric,
    propagate_symmetric,
    q_factor,
)
from .response import (
    ResponseMap,
    SusceptibilityPoint,
    dispersion_slope,
    response_map,
    susceptibility_general,
    susceptibility_symmetric,
    validity_floor,
)
from .polarization import (
    PolarizationState,
    StokesVector,
    TextureSlice,
    average_ellipticity,
    ellipticity_sweep,
    fields_at_z,
    petal_count,
    polarization_state,
    stokes,
    texture_map,
    variant_config,
)
from .config import (
    ScenarioConfig,
    apply_overrides,
    config_hash,
    preset_description,
    preset_dict,
    preset_names,
    scenario_from_dict,
    scenario_from_preset,
    scenario_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "AtomParams",
    "BeamSpec",
    "DriveParams",
    "FieldPair",
    "IntegrationError",
    "MediumResponse",
    "PolarizationState",
    "ResponseMap",
    "ScenarioConfig",
    "SingularityError",
    "StokesVector",
    "SusceptibilityPoint",
    "TextureSlice",
    "TransverseGrid",
    "apply_overrides",
    "average_ellipticity",
    "bloch_rhs",
    "config_hash",
    "coupling_matrix",
    "dark_bright_decompose",
    "dispersion_slope",
    "ellipticity_sweep",
    "fields_at_z",
    "hamiltonian_rwa",
    "initial_density",
    "initial_fields",
    "integrate_master",
    "lg_radial_amplitude",
    "peak_radial_amplitude",
    "petal_count",
    "polarization_state",
    "preset_description",
    "preset_dict",
    "preset_names",
    "propagate_analytic",
    "propagate_numeric",
    "propagate_symmetric",
    "q_factor",
    "response_map",
    "scenario_from_dict",
    "scenario_from_preset",
    "scenario_to_dict",
    "steady_coherences_first_order",
    "stokes",
    "susceptibility_general",
    "susceptibility_symmetric",
    "texture_map",
    "validity_floor",
    "variant_config",
    "weighting",
    "__version__",
]
