"""Steering by rank-1 projective measurements and canonical ellipsoids.

A rank-1 projector on one qubit with Bloch direction ``p_hat`` is the null
four-vector ``p = (1, p_hat)``. Measuring it on Bob's side leaves Alice with
the (unnormalized) four-vector ``lam @ p``; measuring on Alice's side leaves
Bob with ``lam.T @ p``. The zeroth component is the outcome weight, and the
Bloch vector of the steered state is the spatial part divided by it.

For class Ic canonical forms both directions give the same origin-centred
ellipsoid. For class IIc the shifted spheroid is the set of Bob's states
steered by Alice's measurements, so :class:`Ellipsoid` records which party
is steered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalResult
from .errors import NonUnitDirection, ZeroProbabilityOutcome

ZERO_PROB = 1e-12
UNIT_TOL = 1e-9
DEGENERATE_AXIS = 1e-12

ALICE = "alice"
BOB = "bob"


@dataclass(frozen=True)
class SteeringOutcome:
    """Steered Bloch vector.

    ``probability`` is the outcome weight ``(lam p)_0``, which ranges over
    ``(0, 2]`` and sums to 2 over an antipodal pair. ``born_probability`` is
    half of it, the actual probability of the projector clicking.
    """

    q: np.ndarray
    probability: float
    measured: str = BOB

    @property
    def born_probability(self) -> float:
        return 0.5 * self.probability

    @property
    def steered(self) -> str:
        return ALICE if self.measured == BOB else BOB

    def to_dict(self) -> dict:
        return {
            "q": [float(x) for x in self.q],
            "probability": float(self.probability),
            "born_probability": float(self.born_probability),
            "measured": self.measured,
        }


@dataclass(frozen=True)
class Ellipsoid:
    center: np.ndarray
    semi_axes: np.ndarray
    steered: str = ALICE
    cls: str | None = None

    def quadratic_form(self, q) -> np.ndarray:
        """``sum_i ((q_i - c_i)/a_i)^2`` over the non-degenerate axes (rows of ``q``)."""
        q = np.atleast_2d(np.asarray(q, dtype=float))
        live = self.semi_axes > DEGENERATE_AXIS
        d = (q - self.center)[:, live] / self.semi_axes[live]
        return np.sum(d * d, axis=1)

    def to_dict(self) -> dict:
        out = {
            "center": [float(x) for x in self.center],
            "semi_axes": [float(x) for x in self.semi_axes],
            "steered": self.steered,
        }
        if self.cls is not None:
            out["class"] = self.cls
        return out


def _unit(p_hat, tol: float) -> np.ndarray:
    p = np.asarray(p_hat, dtype=float)
    if p.shape != (3,):
        raise NonUnitDirection(f"expected a 3-vector, got shape {p.shape}")
    norm = float(np.linalg.norm(p))
    if abs(norm - 1.0) > tol:
        raise NonUnitDirection(f"|p_hat| = {norm:.12g}, expected 1")
    return p / norm


def _steering_matrix(lam, measured: str) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    if measured == BOB:
        return lam
    if measured == ALICE:
        return lam.T
    raise ValueError(f"measured must be {ALICE!r} or {BOB!r}, got {measured!r}")


def steer(lam, p_hat, measured: str = BOB, unit_tol: float = UNIT_TOL) -> SteeringOutcome:
    """Steer with the projector along ``p_hat`` on the ``measured`` qubit.

    Raises :class:`ZeroProbabilityOutcome` when the outcome weight is below
    ``1e-12``; the steered state is then undefined.
    """
    M = _steering_matrix(lam, measured)
    p = np.concatenate(([1.0], _unit(p_hat, unit_tol)))
    out = M @ p
    weight = float(out[0])
    if weight < ZERO_PROB:
        raise ZeroProbabilityOutcome(f"outcome weight {weight:.3e} for direction {p[1:].tolist()}")
    return SteeringOutcome(q=out[1:] / weight, probability=weight, measured=measured)


def steer_many(lam, directions, measured: str = BOB) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`steer` over rows of unit ``directions``.

    Returns ``(q, weight)``; rows with weight below ``1e-12`` get ``q = nan``.
    """
    M = _steering_matrix(lam, measured)
    d = np.asarray(directions, dtype=float).reshape(-1, 3)
    out = (M[:, 0][None, :] + d @ M[:, 1:].T)
    weight = out[:, 0]
    q = np.full((len(d), 3), np.nan)
    ok = weight >= ZERO_PROB
    q[ok] = out[ok, 1:] / weight[ok, None]
    return q, weight


def ellipsoid_of(canon: CanonicalResult) -> Ellipsoid:
    if canon.cls == "Ic":
        return Ellipsoid(np.zeros(3), canon.ratios.copy(), steered=ALICE, cls="Ic")
    s0, s1 = float(canon.s0), float(canon.s1)
    return Ellipsoid(np.array([0.0, 0.0, 1.0 - s0]), np.array([s1, s1, s0]), steered=BOB, cls="IIc")


def random_directions(n: int, seed: int) -> np.ndarray:
    """``n`` uniform unit vectors from normalized Gaussian draws."""
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((n, 3))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


@dataclass(frozen=True)
class SurfaceCheck:
    max_residual: float
    n_samples: int
    zero_probability: int
    max_norm: float


def verify_on_surface(lam_canonical, ell: Ellipsoid, n: int, seed: int) -> SurfaceCheck:
    """Steer along ``n`` random directions and test membership in ``ell``.

    The residual is ``|form - 1|`` of the quadratic form over the
    non-degenerate axes, combined with ``|q_i - c_i|`` along degenerate
    ones. Zero-weight outcomes are counted and left out of the maximum.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    q, weight = steer_many(lam_canonical, random_directions(n, seed), measured=_measuring(ell))
    ok = weight >= ZERO_PROB
    q = q[ok]
    if len(q) == 0:
        return SurfaceCheck(0.0, n, int(n), 0.0)
    live = ell.semi_axes > DEGENERATE_AXIS
    res = np.zeros(len(q))
    if live.any():
        res = np.abs(ell.quadratic_form(q) - 1.0)
    if (~live).any():
        flat = np.max(np.abs(q[:, ~live] - ell.center[~live]), axis=1)
        res = np.maximum(res, flat)
    return SurfaceCheck(
        max_residual=float(np.max(res)),
        n_samples=n,
        zero_probability=int(np.count_nonzero(~ok)),
        max_norm=float(np.max(np.linalg.norm(q, axis=1))),
    )


def _measuring(ell: Ellipsoid) -> str:
    return BOB if ell.steered == ALICE else ALICE


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` nearly uniform unit vectors on a golden-angle spiral."""
    if n == 1:
        return np.array([[0.0, 0.0, 1.0]])
    i = np.arange(n)
    z = 1.0 - 2.0 * i / (n - 1)
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def sample_surface(ell: Ellipsoid, n: int, directions=None) -> np.ndarray:
    """``n`` surface points ``center + semi_axes * u`` for unit ``u``.

    ``u`` comes from a Fibonacci spiral unless ``directions`` is given.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    u = fibonacci_sphere(n) if directions is None else np.asarray(directions, dtype=float).reshape(-1, 3)
    return ell.center + u * ell.semi_axes
