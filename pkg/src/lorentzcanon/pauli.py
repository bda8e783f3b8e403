"""Pauli-basis real parametrization of two-qubit density matrices.

A two-qubit state ``rho`` is encoded by the real 4x4 matrix

    lam[mu, nu] = Tr[rho (sigma_mu (x) sigma_nu)],   mu, nu = 0..3

with ``sigma_0 = I`` and ``sigma_1,2,3 = X, Y, Z``. The first index belongs to
qubit A (Alice), the second to qubit B (Bob).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NonHermitianInput,
    NonUnitTrace,
    NotPositive,
    NotPositiveSemidefinite,
    ValidationError,
)

DEFAULT_TOL = 1e-9

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

# PAULI_PAIRS[mu, nu] = sigma_mu (x) sigma_nu
PAULI_PAIRS = np.einsum("aij,bkl->abikjl", SIGMA, SIGMA).reshape(4, 4, 4, 4)


@dataclass(frozen=True)
class BlockForm:
    """``lam = [[1, b^T], [a, T]]``."""

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray

    def assemble(self) -> np.ndarray:
        lam = np.empty((4, 4))
        lam[0, 0] = 1.0
        lam[0, 1:] = self.b
        lam[1:, 0] = self.a
        lam[1:, 1:] = self.T
        return lam


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_residual: float
    trace_residual: float
    min_eigenvalue: float
    tol: float

    @property
    def hermitian(self) -> bool:
        return self.hermiticity_residual <= self.tol

    @property
    def unit_trace(self) -> bool:
        return self.trace_residual <= self.tol

    @property
    def positive_semidefinite(self) -> bool:
        return self.min_eigenvalue >= -self.tol

    @property
    def ok(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive_semidefinite

    def failures(self) -> list[str]:
        out = []
        if not self.hermitian:
            out.append("NonHermitianInput")
        if not self.unit_trace:
            out.append("NonUnitTrace")
        if not self.positive_semidefinite:
            out.append("NotPositiveSemidefinite")
        return out


def _as_matrix(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {rho.shape}")
    return rho


def validate_density(rho, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Diagnose Hermiticity, trace and positivity of a candidate state."""
    rho = _as_matrix(rho)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    tr = float(abs(np.trace(rho) - 1.0))
    # eigvalsh only reads one triangle; symmetrize so the report is meaningful
    # even for a non-Hermitian input.
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    return ValidationReport(herm, tr, min_eig, tol)


def check_density(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array, raising on the first failed invariant."""
    rho = _as_matrix(rho)
    report = validate_density(rho, tol)
    if not report.hermitian:
        raise NonHermitianInput(f"Hermiticity residual {report.hermiticity_residual:.3e} > {tol:g}")
    if not report.unit_trace:
        raise NonUnitTrace(f"|Tr rho - 1| = {report.trace_residual:.3e} > {tol:g}")
    if not report.positive_semidefinite:
        raise NotPositiveSemidefinite(f"minimum eigenvalue {report.min_eigenvalue:.3e} < -{tol:g}")
    return rho


def lambda_from_rho(rho, tol: float = DEFAULT_TOL, validate: bool = True) -> np.ndarray:
    """Real parametrization ``lam[mu, nu] = Tr[rho sigma_mu (x) sigma_nu]``.

    ``validate=False`` skips the positivity check (Hermiticity and trace are
    still required), e.g. to parametrize a candidate that is not a state.
    """
    if validate:
        rho = check_density(rho, tol)
    else:
        rho = _as_matrix(rho)
        report = validate_density(rho, tol)
        if not report.hermitian:
            raise NonHermitianInput(f"Hermiticity residual {report.hermiticity_residual:.3e} > {tol:g}")
        if not report.unit_trace:
            raise NonUnitTrace(f"|Tr rho - 1| = {report.trace_residual:.3e} > {tol:g}")
    # Tr[rho P] = sum_ij rho_ij P_ji
    lam_c = np.einsum("ij,abji->ab", rho, PAULI_PAIRS)
    if np.max(np.abs(lam_c.imag)) > tol:
        raise NonHermitianInput("Pauli expectation values are not real")
    lam = lam_c.real.copy()
    lam /= lam[0, 0]
    lam[0, 0] = 1.0
    return lam


def rho_from_lambda(lam, validate: bool = False, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Assemble ``rho = (1/4) sum lam[mu, nu] sigma_mu (x) sigma_nu``.

    With ``validate=True`` the result is checked for positivity and
    :class:`NotPositive` is raised if an eigenvalue falls below ``-tol``;
    a real 4x4 matrix need not describe a physical state.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {lam.shape}")
    if abs(lam[0, 0] - 1.0) > tol:
        raise ValidationError(f"lam[0, 0] = {lam[0, 0]!r}, expected 1")
    rho = 0.25 * np.einsum("ab,abij->ij", lam, PAULI_PAIRS)
    rho = 0.5 * (rho + rho.conj().T)
    if validate:
        w = np.linalg.eigvalsh(rho)
        if w[0] < -tol:
            raise NotPositive(f"assembled density matrix has eigenvalue {w[0]:.3e}")
    return rho


def block_form(lam) -> BlockForm:
    lam = np.asarray(lam, dtype=float)
    return BlockForm(a=lam[1:, 0].copy(), b=lam[0, 1:].copy(), T=lam[1:, 1:].copy())


def check_lambda(lam, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate a real parametrization: normalization, range and physicality."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {lam.shape}")
    if not np.all(np.isfinite(lam)):
        raise ValidationError("lambda contains non-finite entries")
    if abs(lam[0, 0] - 1.0) > tol:
        raise ValidationError(f"lam[0, 0] = {lam[0, 0]!r}, expected 1")
    if np.max(np.abs(lam)) > 1.0 + tol:
        raise ValidationError("lambda entries must lie in [-1, 1]")
    rho_from_lambda(lam, validate=True, tol=tol)
    return lam


def random_density(rng: np.random.Generator) -> np.ndarray:
    """Full-rank random state ``g g^dag / Tr`` from a 4x4 complex Ginibre ``g``."""
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def product_state(u, v) -> np.ndarray:
    """Pure product state ``|u><u| (x) |v><v|`` for qubit kets ``u``, ``v``."""
    psi = np.kron(np.asarray(u, dtype=complex), np.asarray(v, dtype=complex))
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())
