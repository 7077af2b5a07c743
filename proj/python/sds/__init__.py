"""Semiclassical spectra of a point interaction on a surface of revolution."""

from ._sds import (
    BoundaryData,
    CouplingRegime,
    GluedEigenfunction,
    OracleEigenvalue,
    QuantizationMode,
    SpectralEntry,
    SpectralParams,
    SurfaceProfile,
    ValidationReport,
    bessel_j1,
    bessel_y1,
    classify_regime,
    enumerate_spectrum,
    glue,
    half_action,
    indicial_exponents,
    meridian_length,
    oracle_spectrum,
    radial_residual,
    shoot,
    solve_branch,
    sphere_exact_spectrum,
    validate_profile,
)

__all__ = [
    "BoundaryData",
    "CouplingRegime",
    "GluedEigenfunction",
    "OracleEigenvalue",
    "QuantizationMode",
    "SpectralEntry",
    "SpectralParams",
    "SurfaceProfile",
    "ValidationReport",
    "bessel_j1",
    "bessel_y1",
    "classify_regime",
    "enumerate_spectrum",
    "glue",
    "half_action",
    "indicial_exponents",
    "meridian_length",
    "oracle_spectrum",
    "radial_residual",
    "shoot",
    "solve_branch",
    "sphere_exact_spectrum",
    "validate_profile",
]
