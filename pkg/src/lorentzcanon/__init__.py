"""Lorentz canonical forms of two-qubit states and their steering ellipsoids."""

from .canonical import (
    CanonicalResult,
    build_L_IIc,
    build_L_Ic,
    canonicalize,
    canonicalize_omega,
    lambda_IIc,
    lambda_Ic,
    rho_canonical_IIc,
    rho_canonical_Ic,
)
from .minkowski import (
    G,
    causal_type,
    is_lorentz,
    minkowski_norm,
    so31_from_sl2c,
    transform_lambda,
    transform_rho,
)
from .pauli import block_form, lambda_from_rho, rho_from_lambda, validate_density
from .spectral import (
    GEigenSystem,
    HProfile,
    OmegaMatrix,
    classify_case,
    g_eigensystem,
    h_eval,
    h_profile,
    omega_from_lambda,
    omega_from_matrix,
)
from .steering import Ellipsoid, SteeringOutcome, ellipsoid_of, sample_surface, steer, verify_on_surface

__all__ = [
    "CanonicalResult",
    "Ellipsoid",
    "G",
    "GEigenSystem",
    "HProfile",
    "OmegaMatrix",
    "SteeringOutcome",
    "block_form",
    "build_L_IIc",
    "build_L_Ic",
    "canonicalize",
    "canonicalize_omega",
    "causal_type",
    "classify_case",
    "ellipsoid_of",
    "g_eigensystem",
    "h_eval",
    "h_profile",
    "is_lorentz",
    "lambda_IIc",
    "lambda_Ic",
    "lambda_from_rho",
    "minkowski_norm",
    "omega_from_lambda",
    "omega_from_matrix",
    "rho_canonical_IIc",
    "rho_canonical_Ic",
    "rho_from_lambda",
    "sample_surface",
    "so31_from_sl2c",
    "steer",
    "transform_lambda",
    "transform_rho",
    "validate_density",
    "verify_on_surface",
]
