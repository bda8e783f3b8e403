"""Spectral analysis of ``G Omega`` with ``Omega = lam^T G lam``.

After rotating the spatial block of ``Omega`` to diagonal form,

    Omega0 = [[n0, n^T], [n, diag(alpha)]],

the eigenvalues of ``G Omega0`` (the *G-eigenvalues*) are the real zeros of

    h(lam) = n0 - lam - sum_i n_i^2 / (lam + alpha_i)

together with the zeros of a polynomial factor ``phi1`` fixed by which
``n_i`` vanish and which ``alpha_i`` coincide. The eigenvector of an h-zero is
``X = (1, -n_i / (lam + alpha_i))`` and its Minkowski norm equals ``-h'(lam)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NegativeEigenvalue, NotTriad, PoleEvaluation, SpectralFailure
from .minkowski import G, NULL, SPACELIKE, TIMELIKE, causal_type

DTOL_REL = 1e-8
TANGENT_TOL_REL = 1e-10
NEGATIVE_TOL = 1e-9
RESIDUAL_TOL = 1e-8
ORACLE_TOL_REL = 1e-6

_N_CASES = ("(i)", "(ii)", "(iii)", "(iv)")


@dataclass(frozen=True)
class OmegaMatrix:
    """``Omega`` together with its rotated block form ``Omega0``.

    ``omega0 = (1 (+) R) omega (1 (+) R^T)`` with ``R`` a proper rotation
    diagonalizing the spatial block.
    """

    omega: np.ndarray
    R: np.ndarray
    n0: float
    n: np.ndarray
    alpha: np.ndarray
    rotation_residual: float = 0.0

    @property
    def omega0(self) -> np.ndarray:
        out = np.zeros((4, 4))
        out[0, 0] = self.n0
        out[0, 1:] = out[1:, 0] = self.n
        out[1:, 1:] = np.diag(self.alpha)
        return out

    @property
    def rotation4(self) -> np.ndarray:
        P = np.eye(4)
        P[1:, 1:] = self.R
        return P

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.alpha)) + abs(self.n0))


def omega_from_matrix(omega, tol: float = 1e-12) -> OmegaMatrix:
    """Wrap a real symmetric 4x4 ``omega`` and rotate it to block form."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {omega.shape}")
    asym = float(np.max(np.abs(omega - omega.T)))
    if asym > tol * max(1.0, float(np.max(np.abs(omega)))):
        raise ValueError(f"omega is not symmetric (residual {asym:.3e})")
    omega = 0.5 * (omega + omega.T)
    S = omega[1:, 1:]
    w = omega[0, 1:]
    if not np.any(S - np.diag(np.diag(S))):
        # already block-diagonal: keep the given axis order
        R = np.eye(3)
        alpha = np.diag(S).copy()
    else:
        alpha, V = np.linalg.eigh(S)
        R = V.T.copy()
        if np.linalg.det(R) < 0:
            R[-1] *= -1.0
    P = np.eye(4)
    P[1:, 1:] = R
    rotated = P @ omega @ P.T
    resid = float(np.max(np.abs(rotated[1:, 1:] - np.diag(np.diag(rotated[1:, 1:])))))
    return OmegaMatrix(
        omega=omega,
        R=R,
        n0=float(omega[0, 0]),
        n=R @ w,
        alpha=np.asarray(alpha, dtype=float),
        rotation_residual=resid,
    )


def omega_from_lambda(lam) -> OmegaMatrix:
    lam = np.asarray(lam, dtype=float)
    return omega_from_matrix(lam.T @ G @ lam)


def h_eval(om: OmegaMatrix, lam: float) -> float:
    """``h(lam) = n0 - lam - sum_{n_i != 0} n_i^2 / (lam + alpha_i)``."""
    total = om.n0 - lam
    for ni, ai in zip(om.n, om.alpha):
        if ni == 0.0:
            continue
        d = lam + ai
        if abs(d) < 1e-12:
            raise PoleEvaluation(f"h evaluated at its pole lam = {-ai!r}")
        total -= ni * ni / d
    return float(total)


def h_prime(om: OmegaMatrix, lam: float) -> float:
    total = -1.0
    for ni, ai in zip(om.n, om.alpha):
        if ni == 0.0:
            continue
        d = lam + ai
        if abs(d) < 1e-12:
            raise PoleEvaluation(f"h' evaluated at its pole lam = {-ai!r}")
        total += ni * ni / (d * d)
    return float(total)


# ---------------------------------------------------------------------------
# case classification


@dataclass(frozen=True)
class CaseInfo:
    n_case: str
    alpha_case: str
    zero_n: tuple[bool, bool, bool]
    groups: tuple[tuple[int, ...], ...]
    poles: tuple[float, ...]
    pole_weights: tuple[float, ...]
    phi1_roots: tuple[float, ...]
    dtol: float

    @property
    def label(self) -> str:
        return f"{self.n_case}({self.alpha_case})"

    @property
    def k(self) -> int:
        """Number of distinct discontinuities of h."""
        return len(self.poles)

    @property
    def r(self) -> int:
        """Number of roots of phi1, with multiplicity."""
        return len(self.phi1_roots)


def _alpha_groups(alpha: np.ndarray, tol: float) -> list[tuple[int, ...]]:
    order = np.argsort(alpha, kind="stable")
    groups: list[list[int]] = [[int(order[0])]]
    for i in order[1:]:
        if alpha[i] - alpha[groups[-1][-1]] <= tol:
            groups[-1].append(int(i))
        else:
            groups.append([int(i)])
    return [tuple(sorted(g)) for g in groups]


def _alpha_case(groups) -> str:
    if len(groups) == 1:
        return "C"
    if len(groups) == 3:
        return "A"
    pair = next(g for g in groups if len(g) == 2)
    return {(0, 1): "B1", (1, 2): "B2", (0, 2): "B3"}[pair]


def classify_case(om: OmegaMatrix, dtol: float | None = None) -> CaseInfo:
    """Place ``Omega0`` in one of the 4 x 5 cases of the h/phi1 factorization.

    ``dtol`` is an absolute tolerance for the zero tests on ``n_i`` and the
    coincidence tests on ``alpha_i``; by default ``1e-8`` times the spectral
    scale ``max|alpha_i| + |n0|``.
    """
    if dtol is None:
        dtol = DTOL_REL * om.scale
    zero_n = tuple(bool(abs(x) <= dtol) for x in om.n)
    groups = _alpha_groups(om.alpha, dtol)

    poles, weights, phi1 = [], [], []
    for g in groups:
        live = [i for i in g if not zero_n[i]]
        if live:
            root = -float(np.mean(om.alpha[list(g)]))
            poles.append(root)
            weights.append(float(sum(om.n[i] ** 2 for i in live)))
            phi1.extend([root] * (len(g) - 1))
        else:
            phi1.extend(-float(om.alpha[i]) for i in g)
    order = np.argsort(poles)
    case = CaseInfo(
        n_case=_N_CASES[sum(zero_n)],
        alpha_case=_alpha_case(groups),
        zero_n=zero_n,
        groups=tuple(groups),
        poles=tuple(poles[i] for i in order),
        pole_weights=tuple(weights[i] for i in order),
        phi1_roots=tuple(sorted(phi1, reverse=True)),
        dtol=float(dtol),
    )
    assert case.r + case.k + 1 == 4, "phi1 roots + h roots must account for all four G-eigenvalues"
    return case


# ---------------------------------------------------------------------------
# root isolation


@dataclass(frozen=True)
class HRoot:
    value: float
    multiplicity: int
    slope: float
    region: str  # "linear" | "left" | "gap" | "right"


class _HFunction:
    """h with coincident poles merged: ``n0 - x - sum_j w_j / (x - p_j)``."""

    def __init__(self, n0: float, poles, weights):
        self.n0 = float(n0)
        self.poles = [float(p) for p in poles]
        self.weights = [float(w) for w in weights]

    def __call__(self, x: float) -> float:
        total = self.n0 - x
        for p, w in zip(self.poles, self.weights):
            total -= w / (x - p)
        return total

    def slope(self, x: float) -> float:
        total = -1.0
        for p, w in zip(self.poles, self.weights):
            d = x - p
            total += w / (d * d)
        return total


def _bisect(f, lo: float, hi: float, rising: bool) -> float:
    """Sign-change bisection on the open interval ``(lo, hi)``.

    ``rising`` says ``f`` is negative near ``lo`` and positive near ``hi``.
    The endpoints are never evaluated, so they may be poles.
    """
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        v = f(mid)
        if v == 0.0:
            return mid
        if (v < 0.0) == rising:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def isolate_roots(hf: _HFunction, tangent_tol: float) -> list[HRoot]:
    """All real zeros of ``hf``, with double zeros flagged by multiplicity 2.

    Between consecutive poles ``hf`` runs from -inf to +inf. Right of the
    largest pole it is strictly concave and tends to -inf at both ends, left of
    the smallest pole strictly convex and tends to +inf at both ends; in those
    two regions the extremum is located from the monotone slope and the zeros
    (none, one double, or two simple) follow from its sign.
    """
    if not hf.poles:
        return [HRoot(hf.n0, 1, -1.0, "linear")]

    roots: list[HRoot] = []
    poles = hf.poles
    spread = math.sqrt(sum(hf.weights)) + 1.0

    # left of the smallest pole: convex, h' rises from -1 to +inf
    p_min = poles[0]
    x_min = _bisect(hf.slope, p_min - spread, p_min, rising=True)
    h_min = hf(x_min)
    if h_min < -tangent_tol:
        lo = min(hf.n0, x_min) - 1.0
        for x in (_bisect(hf, lo, x_min, rising=False), _bisect(hf, x_min, p_min, rising=True)):
            roots.append(HRoot(x, 1, hf.slope(x), "left"))
    elif h_min <= tangent_tol:
        roots.append(HRoot(x_min, 2, hf.slope(x_min), "left"))

    for lo, hi in zip(poles[:-1], poles[1:]):
        x = _bisect(hf, lo, hi, rising=True)
        roots.append(HRoot(x, 1, hf.slope(x), "gap"))

    # right of the largest pole: concave, h' falls from +inf to -1
    p_max = poles[-1]
    x_max = _bisect(hf.slope, p_max, p_max + spread, rising=False)
    h_max = hf(x_max)
    if h_max > tangent_tol:
        hi = max(hf.n0, x_max) + 1.0
        for x in (_bisect(hf, p_max, x_max, rising=True), _bisect(hf, x_max, hi, rising=False)):
            roots.append(HRoot(x, 1, hf.slope(x), "right"))
    elif h_max >= -tangent_tol:
        roots.append(HRoot(x_max, 2, hf.slope(x_max), "right"))
    return roots


# ---------------------------------------------------------------------------
# eigensystem


@dataclass(frozen=True)
class GEigenSystem:
    """G-eigenvalues and eigenvectors of ``Omega0``.

    Slot 0 always holds the largest eigenvalue and its time-like (class Ic)
    or null (class IIc) eigenvector. In class IIc the eigenvalue is a
    defective double zero of h; slot 1 repeats it and its null eigenvector,
    and slots 2-3 hold the two space-like eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns
    causal_types: tuple[str, ...]
    sources: tuple[str, ...]  # "h" | "phi1"
    cls: str
    case: CaseInfo
    omega: OmegaMatrix
    h_roots: tuple[HRoot, ...]
    oracle_eigenvalues: np.ndarray
    max_residual: float
    extras: dict = field(default_factory=dict)

    @property
    def case_id(self) -> str:
        return self.case.label

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "eigenvectors": [[float(x) for x in self.eigenvectors[:, j]] for j in range(4)],
            "causal_types": list(self.causal_types),
            "case_id": self.case_id,
            "class": self.cls,
        }


def h_eigenvector(om: OmegaMatrix, lam: float, zero_n) -> np.ndarray:
    """``X = (1, -n_i / (lam + alpha_i))`` with vanishing ``n_i`` contributing 0."""
    X = np.zeros(4)
    X[0] = 1.0
    for i in range(3):
        if not zero_n[i]:
            X[i + 1] = -om.n[i] / (lam + om.alpha[i])
    return X


def _phi1_vectors(om: OmegaMatrix, case: CaseInfo) -> list[tuple[float, np.ndarray]]:
    """Eigenvectors ``(0, v)`` for the phi1 zeros, ``v`` orthogonal to ``n``."""
    out = []
    for g in case.groups:
        idx = list(g)
        live = [i for i in idx if not case.zero_n[i]]
        if live:
            ng = np.array([om.n[i] if not case.zero_n[i] else 0.0 for i in idx])
            # rows of vh past the first span the orthogonal complement of ng
            basis = np.linalg.svd(ng[None, :])[2][1:]
            value = -float(np.mean(om.alpha[idx]))
            for row in basis:
                v = np.zeros(4)
                v[[i + 1 for i in idx]] = row
                out.append((value, v))
        else:
            for i in idx:
                v = np.zeros(4)
                v[i + 1] = 1.0
                out.append((-float(om.alpha[i]), v))
    return out


def _normalize(X: np.ndarray, kind: str) -> np.ndarray:
    norm = float(X[0] ** 2 - X[1:] @ X[1:])
    if kind == NULL:
        return X / X[0]
    X = X / math.sqrt(abs(norm))
    if kind == TIMELIKE:
        return X if X[0] > 0 else -X
    pivot = X[np.argmax(np.abs(X))] if X[0] == 0 else X[0]
    return X if pivot > 0 else -X


def g_eigensystem(
    om: OmegaMatrix,
    dtol: float | None = None,
    tangent_tol: float | None = None,
) -> GEigenSystem:
    """Full G-eigensystem of ``Omega0`` from the zeros of h and phi1.

    A dense eigensolver on ``G Omega0`` runs alongside as a cross-check; a
    disagreement beyond ``1e-6`` times the spectral scale is reported as
    :class:`SpectralFailure`.
    """
    case = classify_case(om, dtol)
    scale = max(om.scale, 1e-300)
    if tangent_tol is None:
        tangent_tol = TANGENT_TOL_REL * scale
    hf = _HFunction(om.n0, case.poles, case.pole_weights)
    roots = isolate_roots(hf, tangent_tol)

    n_h = sum(r.multiplicity for r in roots)
    if n_h != case.k + 1:
        raise SpectralFailure(
            f"h has {n_h} real zeros, expected {case.k + 1}: complex G-eigenvalues, not a physical state"
        )

    GO = G @ om.omega0
    oracle = np.sort(np.linalg.eigvals(GO).real)[::-1]
    values = sorted([r.value for r in roots for _ in range(r.multiplicity)] + list(case.phi1_roots), reverse=True)
    values = np.array(values)
    mismatch = float(np.max(np.abs(values - oracle)))
    if mismatch > ORACLE_TOL_REL * max(1.0, scale):
        raise SpectralFailure(f"root isolation disagrees with dense eigensolver by {mismatch:.3e}")
    if values[-1] < -NEGATIVE_TOL:
        raise NegativeEigenvalue(f"G-eigenvalue {values[-1]:.6g} < 0: input is not a physical state")

    top = max(roots, key=lambda r: r.value)
    if top.value < values[0] - NEGATIVE_TOL * max(1.0, scale):
        raise SpectralFailure("largest G-eigenvalue has no causal eigenvector: not a physical state")
    tangent = top.multiplicity == 2
    cls = "IIc" if tangent else "Ic"

    slots: list[tuple[float, np.ndarray, str, HRoot | None]] = []
    X0 = h_eigenvector(om, top.value, case.zero_n)
    slots.append((top.value, X0, "h", top))
    if tangent:
        slots.append((top.value, X0.copy(), "h", top))
    rest: list[tuple[float, np.ndarray, str, HRoot | None]] = []
    for r in roots:
        if r is top:
            continue
        for _ in range(r.multiplicity):
            rest.append((r.value, h_eigenvector(om, r.value, case.zero_n), "h", r))
    rest.extend((val, v, "phi1", None) for val, v in _phi1_vectors(om, case))
    rest.sort(key=lambda s: -s[0])
    slots.extend(rest)

    eigenvalues = np.array([s[0] for s in slots])
    vectors = np.zeros((4, 4))
    types = []
    for j, (val, X, src, _) in enumerate(slots):
        kind = causal_type(X / np.linalg.norm(X))
        if j == 0 and tangent:
            kind = NULL
        types.append(kind)
        vectors[:, j] = _normalize(X, kind)

    residuals = [
        float(np.linalg.norm(GO @ vectors[:, j] - eigenvalues[j] * vectors[:, j]) / np.linalg.norm(vectors[:, j]))
        for j in range(4)
    ]
    max_res = max(residuals)
    if max_res > RESIDUAL_TOL * max(1.0, scale):
        raise SpectralFailure(f"eigenpair residual {max_res:.3e} exceeds {RESIDUAL_TOL:g}")

    expected = [NULL, NULL, SPACELIKE, SPACELIKE] if tangent else [TIMELIKE, SPACELIKE, SPACELIKE, SPACELIKE]
    if types != expected:
        raise SpectralFailure(f"causal structure {types} matches neither a tetrad nor a triad")
    if tangent and abs(eigenvalues[2] - eigenvalues[3]) > 1e-7 * max(1.0, scale):
        raise NotTriad(
            f"class IIc requires equal space-like G-eigenvalues, got {eigenvalues[2]:.9g} and {eigenvalues[3]:.9g}"
        )

    return GEigenSystem(
        eigenvalues=eigenvalues,
        eigenvectors=vectors,
        causal_types=tuple(types),
        sources=tuple(s[2] for s in slots),
        cls=cls,
        case=case,
        omega=om,
        h_roots=tuple(roots),
        oracle_eigenvalues=oracle,
        max_residual=max_res,
    )


# ---------------------------------------------------------------------------
# plot data


@dataclass(frozen=True)
class HProfile:
    poles: tuple[float, ...]
    roots: tuple[HRoot, ...]
    phi1_roots: tuple[float, ...]
    case_id: str
    samples: list[tuple[float, float, bool]]  # (lambda, h or nan, is_gap)

    @property
    def slopes_at_roots(self) -> tuple[float, ...]:
        return tuple(r.slope for r in self.roots)

    @property
    def root_count(self) -> int:
        """Zeros of h counted with multiplicity."""
        return sum(r.multiplicity for r in self.roots)

    @property
    def gaps(self) -> list[float]:
        return [x for x, _, g in self.samples if g]


def h_profile(
    om: OmegaMatrix,
    lambda_min: float,
    lambda_max: float,
    n_samples: int,
    pole_margin: float = 1e-6,
    dtol: float | None = None,
) -> HProfile:
    """Sample h on a uniform grid for plotting.

    Each pole inside the window becomes a gap row ``(pole, nan, True)``;
    grid points within ``pole_margin`` of a pole are dropped.
    """
    if not lambda_min < lambda_max:
        raise ValueError("lambda_min must be smaller than lambda_max")
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    case = classify_case(om, dtol)
    hf = _HFunction(om.n0, case.poles, case.pole_weights)
    roots = isolate_roots(hf, TANGENT_TOL_REL * max(om.scale, 1e-300))

    rows: list[tuple[float, float, bool]] = []
    for x in np.linspace(lambda_min, lambda_max, n_samples):
        x = float(x)
        if any(abs(x - p) < pole_margin for p in case.poles):
            continue
        rows.append((x, float(hf(x)), False))
    rows.extend((p, math.nan, True) for p in case.poles if lambda_min <= p <= lambda_max)
    rows.sort(key=lambda row: row[0])
    return HProfile(
        poles=case.poles,
        roots=tuple(sorted(roots, key=lambda r: r.value)),
        phi1_roots=case.phi1_roots,
        case_id=case.label,
        samples=rows,
    )
