"""Lorentz canonical forms of the real parametrization.

Class Ic (time-like top G-eigenvector) reduces to the diagonal form
``diag(1, sqrt(l1/l0), sqrt(l2/l0), +-sqrt(l3/l0))``, i.e. a Bell-diagonal
state. Class IIc (null top G-eigenvector) reduces to

    [[1, 0,   0,  1 - s0],
     [0, s1,  0,  0     ],
     [0, 0,  -s1, 0     ],
     [0, 0,   0,  s0    ]]

with ``s0 = l0/chi0`` and ``s1 = sqrt(l1/chi0)``. Here ``chi0`` is not an
invariant: a boost along the null direction rescales it freely, so a gauge
value of ``s0`` is chosen (1/2 by default, i.e. ``chi0 = 2 l0``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotTetrad, NotTriad, SpectralFailure, ValidationError
from .minkowski import G, g_inverse
from .pauli import DEFAULT_TOL, rho_from_lambda
from .spectral import GEigenSystem, OmegaMatrix, g_eigensystem, omega_from_lambda

DEFAULT_S0 = 0.5
_SIGNATURE = (1.0, -1.0, -1.0, -1.0)


@dataclass(frozen=True)
class CanonicalResult:
    cls: str
    lambda_canonical: np.ndarray
    rho_canonical: np.ndarray
    eigenvalues: np.ndarray
    L_B: np.ndarray
    L_A: np.ndarray | None = None
    sign: int | None = None  # Ic only
    s0: float | None = None  # IIc only
    s1: float | None = None
    chi0: float | None = None
    factor: float = 1.0  # (L_A lam L_B^T) = factor * lambda_canonical
    eigensystem: GEigenSystem | None = field(default=None, repr=False)
    omega_canonical: np.ndarray | None = None
    rho_min_eigenvalue: float = 0.0

    @property
    def physical(self) -> bool:
        return self.rho_min_eigenvalue >= -DEFAULT_TOL

    @property
    def ratios(self) -> np.ndarray:
        """``sqrt(l_i / l0)`` for the three space-like slots (Ic)."""
        ev = np.clip(self.eigenvalues, 0.0, None)
        return np.sqrt(ev[1:] / ev[0])

    def to_dict(self) -> dict:
        out = {
            "class": self.cls,
            "lambda_canonical": self.lambda_canonical.tolist(),
            "eigenvalues": [float(x) for x in self.eigenvalues],
        }
        if self.sign is not None:
            out["sign"] = int(self.sign)
        for key in ("s0", "s1", "chi0"):
            val = getattr(self, key)
            if val is not None:
                out[key] = float(val)
        if self.L_A is not None:
            out["L_A"] = self.L_A.tolist()
        out["L_B"] = self.L_B.tolist()
        return out


def _check_lorentz_frame(M: np.ndarray, tol: float, exc) -> None:
    err = float(np.max(np.abs(M.T @ G @ M - G)))
    if err > tol * max(1.0, float(np.max(np.abs(M))) ** 2):
        raise exc(f"eigenvector frame is not Lorentz orthonormal (defect {err:.3e})")


def build_L_Ic(es: GEigenSystem, tol: float = 1e-7) -> np.ndarray:
    """Lorentz ``L`` with ``L Omega0 L^T = diag(l0, -l1, -l2, -l3)``.

    The normalized tetrad forms the columns of ``M`` with ``M^T G M = G``;
    the congruence is then carried by ``L = M^T``.
    """
    if es.cls != "Ic":
        raise NotTetrad(f"eigensystem is class {es.cls}, not Ic")
    M = es.eigenvectors.copy()
    if M[0, 0] < 0:
        M[:, 0] *= -1.0
    _check_lorentz_frame(M, tol, NotTetrad)
    if np.linalg.det(M) < 0:
        M[:, 3] *= -1.0
    return M.T.copy()


def build_L_IIc(es: GEigenSystem, s0: float = DEFAULT_S0, tol: float = 1e-7) -> tuple[np.ndarray, float]:
    """Lorentz ``L`` bringing ``Omega0`` to the non-diagonal form.

    ``L Omega0 L^T`` has diagonal ``(chi0, -l1, -l1, chi0 - 2 l0)`` and corner
    entries ``chi0 - l0``, with ``chi0 = l0 / s0``. The null eigenvector ``u``
    and the Jordan partner ``y`` solving ``(G Omega0 - l0) y = u`` span the
    light-cone plane; rescaling them fixes ``chi0``.
    """
    if es.cls != "IIc":
        raise NotTriad(f"eigensystem is class {es.cls}, not IIc")
    if not 0.0 < s0 < 1.0:
        raise ValidationError(f"s0 = {s0!r} must lie in (0, 1)")
    lam0 = float(es.eigenvalues[0])
    if lam0 <= 0.0:
        raise SpectralFailure("largest G-eigenvalue is zero")
    om0 = es.omega.omega0
    u = es.eigenvectors[:, 0].copy()
    u = u / u[0]

    v1 = es.eigenvectors[:, 2].copy()
    v2 = es.eigenvectors[:, 3].copy()
    v2 = v2 + (v2 @ G @ v1) * v1  # G-orthogonalize within a shared eigenspace
    v2 = v2 / math.sqrt(-(v2 @ G @ v2))

    A = G @ om0 - lam0 * np.eye(4)
    y, *_ = np.linalg.lstsq(A, u, rcond=None)
    if np.linalg.norm(A @ y - u) > 1e-6 * max(1.0, np.linalg.norm(u)):
        raise NotTriad("top G-eigenvalue is not defective: no Jordan partner for the null eigenvector")
    for v in (v1, v2):
        y = y + (y @ G @ v) * v
    c = float(u @ G @ y)
    if c <= 0.0:
        raise NotTriad("null eigenvector and its Jordan partner have the wrong orientation")
    y = y - (y @ G @ y) / (2.0 * c) * u  # make the partner null

    chi0 = lam0 / s0
    a = 1.0 / math.sqrt((chi0 - lam0) * c)
    l_minus = a * u
    l_plus = 2.0 * (chi0 - lam0) * a * y
    M = np.column_stack([0.5 * (l_plus + l_minus), v1, v2, 0.5 * (l_plus - l_minus)])
    _check_lorentz_frame(M, tol, NotTriad)
    if np.linalg.det(M) < 0:
        M[:, 2] *= -1.0
    return M.T.copy(), chi0


def omega_IIc(lam0: float, lam1: float, chi0: float) -> np.ndarray:
    out = np.diag([chi0, -lam1, -lam1, chi0 - 2.0 * lam0])
    out[0, 3] = out[3, 0] = chi0 - lam0
    return out


def lambda_IIc(s0: float, s1: float) -> np.ndarray:
    lam = np.diag([1.0, s1, -s1, s0])
    lam[0, 3] = 1.0 - s0
    return lam


def lambda_Ic(eigenvalues, sign: int = 1) -> np.ndarray:
    ev = np.asarray(eigenvalues, dtype=float)
    if ev[0] <= 0.0:
        raise ValueError("largest G-eigenvalue must be positive")
    r = np.sqrt(np.clip(ev[1:], 0.0, None) / ev[0])
    return np.diag([1.0, r[0], r[1], (1.0 if sign >= 0 else -1.0) * r[2]])


def rho_canonical_Ic(eigenvalues, sign: int = 1, validate: bool = True, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Bell-diagonal state with correlations ``sqrt(l_i/l0)`` (third one signed)."""
    return rho_from_lambda(lambda_Ic(eigenvalues, sign), validate=validate, tol=tol)


def rho_canonical_IIc(s0: float, s1: float, validate: bool = True, tol: float = DEFAULT_TOL) -> np.ndarray:
    return rho_from_lambda(lambda_IIc(s0, s1), validate=validate, tol=tol)


def _min_eig(rho: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(rho)[0])


def _physical_sign(eigenvalues) -> int:
    """Ic sign giving a positive canonical state, +1 when both (or neither) do."""
    plus = _min_eig(rho_canonical_Ic(eigenvalues, 1, validate=False))
    minus = _min_eig(rho_canonical_Ic(eigenvalues, -1, validate=False))
    if plus < -DEFAULT_TOL and minus >= -DEFAULT_TOL:
        return -1
    return 1


def _g_frame(cols: np.ndarray, skip: set[int]) -> np.ndarray:
    """Lorentz-orthonormal frame from Gram-Schmidt on the columns of ``cols``.

    Columns listed in ``skip`` (zero G-norm after projection) are replaced by
    a completion; the result then has determinant +1.
    """
    Q = np.zeros((4, 4))
    done: list[int] = []

    def project(v):
        for _ in range(2):
            for i in done:
                v = v - _SIGNATURE[i] * (Q[:, i] @ G @ v) * Q[:, i]
        return v

    for j in range(4):
        if j in skip:
            continue
        v = project(cols[:, j].astype(float))
        nrm = float(v @ G @ v)
        if nrm * _SIGNATURE[j] <= 0.0:
            raise SpectralFailure(f"column {j} has the wrong causal character for a canonical frame")
        Q[:, j] = v / math.sqrt(abs(nrm))
        done.append(j)
    for j in sorted(skip):
        for e in np.eye(4)[[j] + [i for i in range(4) if i != j]]:
            v = project(e)
            nrm = float(v @ G @ v)
            if nrm * _SIGNATURE[j] > 0.25:
                Q[:, j] = v / math.sqrt(abs(nrm))
                done.append(j)
                break
    if skip and np.linalg.det(Q) < 0:
        Q[:, max(skip)] *= -1.0
    if Q[0, 0] < 0:
        raise SpectralFailure("canonical frame is not future-pointing")
    return Q


def _local_factor(lam_prime: np.ndarray, target: np.ndarray, skip: set[int]) -> np.ndarray:
    """Lorentz ``L_A`` with ``L_A lam_prime = target``; both share ``X^T G X``."""
    N1 = _g_frame(lam_prime, skip)
    N2 = _g_frame(target, skip)
    return N2 @ g_inverse(N1)


def _det_sign(lam: np.ndarray) -> int:
    d = float(np.linalg.det(lam))
    return -1 if d < -1e-12 else 1


def canonicalize_eigensystem(
    es: GEigenSystem,
    lam: np.ndarray | None = None,
    s0: float = DEFAULT_S0,
    sign: int | None = None,
    tol: float = DEFAULT_TOL,
) -> CanonicalResult:
    """Canonical form from an eigensystem; ``lam`` (if known) fixes ``L_A`` and the Ic sign."""
    ev = es.eigenvalues
    lam0 = float(ev[0])
    if lam0 <= 1e-14 * max(1.0, es.omega.scale):
        raise SpectralFailure("largest G-eigenvalue is zero: Omega is rank-degenerate")
    P = es.omega.rotation4
    # a physical lam must give a positive canonical state; Omega alone need not
    validate = lam is not None
    if sign is None:
        sign = _det_sign(lam) if lam is not None else _physical_sign(ev)

    if es.cls == "Ic":
        L = build_L_Ic(es)
        lam_c = lambda_Ic(ev, sign)
        rho_c = rho_canonical_Ic(ev, sign, validate, tol)
        factor = math.sqrt(lam0)
        om_c = np.diag([lam0, -ev[1], -ev[2], -ev[3]])
        extra = {"sign": sign}
        small = {j for j in (1, 2, 3) if ev[j] <= 1e-14 * lam0}
    else:
        L, chi0 = build_L_IIc(es, s0)
        lam_s = float(np.clip(0.5 * (ev[2] + ev[3]), 0.0, None))
        s1 = math.sqrt(lam_s / chi0)
        lam_c = lambda_IIc(s0, s1)
        rho_c = rho_canonical_IIc(s0, s1, validate, tol)
        factor = math.sqrt(chi0)
        om_c = omega_IIc(lam0, lam_s, chi0)
        extra = {"s0": s0, "s1": s1, "chi0": chi0}
        small = {1, 2} if lam_s <= 1e-14 * lam0 else set()

    L_B = L @ P
    L_A = None
    if lam is not None:
        lam_prime = np.asarray(lam, dtype=float) @ L_B.T
        L_A = _local_factor(lam_prime, factor * lam_c, small)
        if np.linalg.det(L_A) < 0:
            raise SpectralFailure("no proper Lorentz factor maps the state to its canonical form")
    return CanonicalResult(
        cls=es.cls,
        lambda_canonical=lam_c,
        rho_canonical=rho_c,
        eigenvalues=ev.copy(),
        L_B=L_B,
        L_A=L_A,
        factor=factor,
        eigensystem=es,
        omega_canonical=om_c,
        rho_min_eigenvalue=_min_eig(rho_c),
        **extra,
    )


def canonicalize(lam, s0: float = DEFAULT_S0, dtol: float | None = None, tol: float = DEFAULT_TOL) -> CanonicalResult:
    """Canonical form of a two-qubit real parametrization ``lam``.

    The returned ``L_A``, ``L_B`` satisfy
    ``L_A lam L_B^T = factor * lambda_canonical``.
    """
    lam = np.asarray(lam, dtype=float)
    es = g_eigensystem(omega_from_lambda(lam), dtol=dtol)
    return canonicalize_eigensystem(es, lam=lam, s0=s0, tol=tol)


def canonicalize_omega(
    om: OmegaMatrix, s0: float = DEFAULT_S0, sign: int | None = None, dtol: float | None = None
) -> CanonicalResult:
    """Canonical form when only ``Omega`` is known.

    ``Omega`` fixes ``|det lam|`` but not its sign, and ``L_A`` cannot be
    determined. Unless ``sign`` is given, the Ic sign is the one giving a
    positive canonical state. An ``Omega`` need not come from any state at all;
    ``result.physical`` reports whether the canonical state is positive.
    """
    es = g_eigensystem(om, dtol=dtol)
    return canonicalize_eigensystem(es, lam=None, s0=s0, sign=sign)
