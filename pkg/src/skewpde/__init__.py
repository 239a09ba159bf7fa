"""Two-habitat vector-host reaction-diffusion model with skew interface crossing.

Subpackage map:
  model        constants, interface flux weights, trace flows, host bound
  sectors      complex-sector calculus and the interface symbol
  grids        two-strip tensor grids, fields, sine transforms, norms
  resolvent    spectral (sine-mode) resolvent solver via representation formulas
  oracle       independent finite-difference two-interval BVP solver
  simulator    time-domain integration of the six-species system
  verification sampling harnesses for the sector estimates and solver checks
  config / io_formats / cli   configuration, serialization, command line
"""

from .model import (
    ModelParameters,
    SpeciesCoefficients,
    TraceFluxes,
    HostBoundError,
    HostBoundReport,
    ParameterError,
    SPECIES,
    check_host_bound,
    default_r0,
    require_host_bound,
    species_coefficients,
    trace_fluxes,
)
from .sectors import (
    DeterminantUnderflowError,
    SectorConfig,
    SectorError,
    SpectralShift,
    cosine_lower_bound,
    exp_perturbation_bounds,
    in_sector,
    mode_determinant,
    shifted_roots,
    transmission_symbol,
)

__all__ = [
    "ModelParameters",
    "SpeciesCoefficients",
    "TraceFluxes",
    "HostBoundError",
    "HostBoundReport",
    "ParameterError",
    "SPECIES",
    "check_host_bound",
    "default_r0",
    "require_host_bound",
    "species_coefficients",
    "trace_fluxes",
    "DeterminantUnderflowError",
    "SectorConfig",
    "SectorError",
    "SpectralShift",
    "cosine_lower_bound",
    "exp_perturbation_bounds",
    "in_sector",
    "mode_determinant",
    "shifted_roots",
    "transmission_symbol",
]

__version__ = "0.1.0"
