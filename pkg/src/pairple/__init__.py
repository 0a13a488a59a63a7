"""Steady-state photoluminescence-excitation spectra of a dipole-coupled emitter pair."""

from .couplings import (
    Couplings,
    PairParams,
    compute_couplings,
    dipole_coupling,
    drive_amplitudes,
    gamma_12,
    green_tensor,
    omega_12,
    omega12_root,
)
from .errors import (
    ConfigError,
    DegenerateSteadyState,
    DomainError,
    GeometryError,
    NotConverged,
    SingularSolve,
    SolverError,
)
from .geometry import GeometryConfig, GeometryDerived, derive_geometry, sin2_beta
from .master_equation import (
    Liouvillian,
    apply_liouvillian,
    build_liouvillian,
    to_collective,
)
from .spectra import (
    IntensityFactors,
    Peak,
    PleSpectrum,
    PolarizationScan,
    find_peaks,
    intensity_factors,
    ple_scan,
    polarization_scan,
    brightest_side_peak,
    side_peak_offset,
    total_intensity,
)
from .steady_state import EvolveResult, evolve_to_steady, solve_steady

__version__ = "0.1.0"

__all__ = [
    "apply_liouvillian",
    "brightest_side_peak",
    "build_liouvillian",
    "compute_couplings",
    "ConfigError",
    "Couplings",
    "DegenerateSteadyState",
    "derive_geometry",
    "dipole_coupling",
    "DomainError",
    "drive_amplitudes",
    "evolve_to_steady",
    "EvolveResult",
    "find_peaks",
    "gamma_12",
    "GeometryConfig",
    "GeometryDerived",
    "GeometryError",
    "green_tensor",
    "intensity_factors",
    "IntensityFactors",
    "Liouvillian",
    "NotConverged",
    "omega12_root",
    "omega_12",
    "PairParams",
    "Peak",
    "ple_scan",
    "PleSpectrum",
    "polarization_scan",
    "PolarizationScan",
    "side_peak_offset",
    "sin2_beta",
    "SingularSolve",
    "solve_steady",
    "SolverError",
    "to_collective",
    "total_intensity",
]
