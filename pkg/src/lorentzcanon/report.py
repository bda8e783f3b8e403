"""End-to-end analysis of one input: validation, spectrum, canonical form, ellipsoid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import DEFAULT_S0, CanonicalResult, canonicalize_eigensystem
from .io import DENSITY, LAMBDA, OMEGA, LoadedInput, density_to_json
from .minkowski import is_lorentz
from .pauli import DEFAULT_TOL, check_density, check_lambda, lambda_from_rho
from .spectral import GEigenSystem, g_eigensystem, omega_from_lambda, omega_from_matrix
from .steering import Ellipsoid, ellipsoid_of, verify_on_surface

DEFAULT_SEED = 0
DEFAULT_SURFACE_SAMPLES = 1000


@dataclass(frozen=True)
class Analysis:
    loaded: LoadedInput
    lam: np.ndarray | None
    eigensystem: GEigenSystem
    canonical: CanonicalResult
    ellipsoid: Ellipsoid


def run_pipeline(
    loaded: LoadedInput,
    tol: float = DEFAULT_TOL,
    dtol: float | None = None,
    s0: float = DEFAULT_S0,
) -> Analysis:
    """Validate ``loaded`` and carry it through to the canonical ellipsoid."""
    lam = None
    if loaded.kind == DENSITY:
        lam = lambda_from_rho(check_density(loaded.matrix, tol), tol)
    elif loaded.kind == LAMBDA:
        lam = check_lambda(loaded.matrix, tol)
    if loaded.kind == OMEGA:
        om = omega_from_matrix(loaded.matrix)
    else:
        om = omega_from_lambda(lam)
    es = g_eigensystem(om, dtol=dtol)
    canon = canonicalize_eigensystem(es, lam=lam, s0=s0, tol=tol)
    return Analysis(loaded, lam, es, canon, ellipsoid_of(canon))


def diagnostics(an: Analysis, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SURFACE_SAMPLES) -> dict:
    es, canon = an.eigensystem, an.canonical
    omega = es.omega.omega
    congruence = canon.L_B @ omega @ canon.L_B.T - canon.omega_canonical
    out = {
        "eigen_residual": es.max_residual,
        "oracle_eigenvalues": [float(x) for x in es.oracle_eigenvalues],
        "oracle_max_diff": float(np.max(np.abs(np.sort(es.oracle_eigenvalues)[::-1] - es.eigenvalues))),
        "rotation_residual": float(es.omega.rotation_residual),
        "congruence_residual": float(np.max(np.abs(congruence))),
        "L_B_is_lorentz": bool(is_lorentz(canon.L_B, 1e-7)),
        "rho_canonical_min_eigenvalue": canon.rho_min_eigenvalue,
    }
    if canon.L_A is not None and an.lam is not None:
        diff = canon.L_A @ an.lam @ canon.L_B.T - canon.factor * canon.lambda_canonical
        out["factor_residual"] = float(np.max(np.abs(diff)))
        out["L_A_is_lorentz"] = bool(is_lorentz(canon.L_A, 1e-7))
    check = verify_on_surface(canon.lambda_canonical, an.ellipsoid, samples, seed)
    out["surface"] = {
        "samples": check.n_samples,
        "seed": seed,
        "max_residual": check.max_residual,
        "zero_probability": check.zero_probability,
        "max_norm": check.max_norm,
    }
    return out


def analysis_report(an: Analysis, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SURFACE_SAMPLES) -> dict:
    om = an.eigensystem.omega
    report = {
        "input": {"kind": an.loaded.kind, "data": an.loaded.raw},
    }
    if an.lam is not None:
        report["lambda"] = an.lam.tolist()
    report["omega"] = om.omega.tolist()
    report["omega0"] = {
        "n0": float(om.n0),
        "n": [float(x) for x in om.n],
        "alpha": [float(x) for x in om.alpha],
        "R": om.R.tolist(),
    }
    report.update(an.eigensystem.to_dict())
    report["phi1_roots"] = [float(x) for x in an.eigensystem.case.phi1_roots]
    report["canonical"] = an.canonical.to_dict()
    report["canonical"]["factor"] = float(an.canonical.factor)
    report["rho_canonical"] = density_to_json(an.canonical.rho_canonical)
    report["physical_canonical_state"] = an.canonical.physical
    report["ellipsoid"] = an.ellipsoid.to_dict()
    report["diagnostics"] = diagnostics(an, seed, samples)
    return report
