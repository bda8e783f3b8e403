"""Minkowski four-vectors, Lorentz matrices and the SL(2,C) -> SO(3,1) map."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateNormalization, NotUnitDeterminant, ValidationError
from .pauli import SIGMA, check_density

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
G = METRIC

TIMELIKE = "time-like"
NULL = "null"
SPACELIKE = "space-like"

LORENTZ_TOL = 1e-9


def minkowski_norm(p) -> float:
    p = np.asarray(p, dtype=float)
    return float(p[0] * p[0] - p[1:] @ p[1:])


def minkowski_dot(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(p[0] * q[0] - p[1:] @ q[1:])


def causal_type(p, ctol: float | None = None) -> str:
    """Classify ``p`` by the sign of ``p^T G p``.

    The null band scales with the Euclidean size of ``p``:
    ``ctol = 1e-7 * max(1, |p|^2)`` unless given explicitly.
    """
    p = np.asarray(p, dtype=float)
    norm = minkowski_norm(p)
    if ctol is None:
        ctol = 1e-7 * max(1.0, float(p @ p))
    if norm > ctol:
        return TIMELIKE
    if norm < -ctol:
        return SPACELIKE
    return NULL


def lorentz_defects(L) -> tuple[float, float]:
    """Return ``(max |L^T G L - G|, |det L - 1|)``."""
    L = np.asarray(L, dtype=float)
    return (
        float(np.max(np.abs(L.T @ G @ L - G))),
        float(abs(np.linalg.det(L) - 1.0)),
    )


def is_lorentz(L, tol: float = LORENTZ_TOL) -> bool:
    """Proper orthochronous Lorentz matrix test."""
    L = np.asarray(L, dtype=float)
    if L.shape != (4, 4):
        return False
    metric_err, det_err = lorentz_defects(L)
    # roundoff in L^T G L grows with the boost size
    size = max(1.0, float(np.max(np.abs(L))))
    return metric_err <= tol * size**2 and det_err <= tol * size**4 and L[0, 0] >= 1.0 - tol


def g_inverse(L) -> np.ndarray:
    """Inverse of a Lorentz matrix, ``G L^T G``."""
    L = np.asarray(L, dtype=float)
    return G @ L.T @ G


def rotation(axis, angle: float) -> np.ndarray:
    """``1 (+) R`` for a spatial rotation by ``angle`` about ``axis``."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    K = np.array(
        [[0.0, -axis[2], axis[1]], [axis[2], 0.0, -axis[0]], [-axis[1], axis[0], 0.0]]
    )
    R = np.eye(3) + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)
    L = np.eye(4)
    L[1:, 1:] = R
    return L


def boost(direction, rapidity: float) -> np.ndarray:
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    L = np.eye(4)
    L[0, 0] = ch
    L[0, 1:] = L[1:, 0] = sh * n
    L[1:, 1:] += (ch - 1.0) * np.outer(n, n)
    return L


def check_sl2c(A, tol: float = LORENTZ_TOL) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2):
        raise ValidationError(f"expected a 2x2 matrix, got shape {A.shape}")
    d = np.linalg.det(A)
    if abs(d - 1.0) > tol:
        raise NotUnitDeterminant(f"det A = {d:.6g}, expected 1")
    return A


def so31_from_sl2c(A, tol: float = LORENTZ_TOL) -> np.ndarray:
    """Lorentz image of ``A``: ``L[alpha, mu] = (1/2) Tr[sigma_alpha A sigma_mu A^dag]``."""
    A = check_sl2c(A, tol)
    conj = A @ SIGMA @ A.conj().T  # conj[mu] = A sigma_mu A^dag
    L = 0.5 * np.einsum("aij,mji->am", SIGMA, conj)
    return L.real.copy()


def random_sl2c(rng: np.random.Generator) -> np.ndarray:
    """Ginibre 2x2 matrix rescaled to unit determinant."""
    while True:
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        d = np.linalg.det(g)
        if abs(d) > 1e-3:
            return g / np.sqrt(d)


def random_su2(rng: np.random.Generator) -> np.ndarray:
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    a, b = q[0] + 1j * q[3], q[2] + 1j * q[1]
    return np.array([[a, -b.conjugate()], [b, a.conjugate()]])


def transform_lambda(lam, LA, LB) -> tuple[np.ndarray, np.ndarray]:
    """Apply ``lam -> LA lam LB^T``.

    Returns ``(normalized, raw)`` where ``normalized = raw / raw[0, 0]``.
    """
    raw = np.asarray(LA, dtype=float) @ np.asarray(lam, dtype=float) @ np.asarray(LB, dtype=float).T
    if abs(raw[0, 0]) < 1e-12:
        raise DegenerateNormalization(f"(LA lam LB^T)[0, 0] = {raw[0, 0]:.3e}")
    return raw / raw[0, 0], raw


def transform_rho(rho, A, B, tol: float = 1e-9) -> np.ndarray:
    """Local filtering ``(A (x) B) rho (A (x) B)^dag``, renormalized to unit trace."""
    rho = check_density(rho, tol)
    A = check_sl2c(A)
    B = check_sl2c(B)
    AB = np.kron(A, B)
    out = AB @ rho @ AB.conj().T
    tr = np.trace(out).real
    if tr < 1e-12:
        raise DegenerateNormalization(f"trace after filtering = {tr:.3e}")
    out = out / tr
    return 0.5 * (out + out.conj().T)
