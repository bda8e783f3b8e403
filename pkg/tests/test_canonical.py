import numpy as np
import pytest

from conftest import EXAMPLE_OMEGA
from lorentzcanon.canonical import (
    build_L_IIc,
    build_L_Ic,
    canonicalize,
    canonicalize_omega,
    lambda_IIc,
    omega_IIc,
    rho_canonical_IIc,
    rho_canonical_Ic,
)
from lorentzcanon.errors import NotPositive, NotTetrad, NotTriad, SpectralFailure
from lorentzcanon.minkowski import G, boost, is_lorentz, random_sl2c, so31_from_sl2c, transform_lambda
from lorentzcanon.pauli import SIGMA, lambda_from_rho, product_state, random_density, validate_density
from lorentzcanon.spectral import g_eigensystem, omega_from_matrix


def es_of(k):
    return g_eigensystem(omega_from_matrix(EXAMPLE_OMEGA[k]))


def random_orbit_point(lam, rng):
    LA, LB = so31_from_sl2c(random_sl2c(rng)), so31_from_sl2c(random_sl2c(rng))
    out, _ = transform_lambda(lam, LA, LB)
    return out


def test_diagonal_omega_gives_identity_frame():
    es = g_eigensystem(omega_from_matrix(np.diag([1.0, -0.5, -0.3, -0.1])))
    L = build_L_Ic(es)
    np.testing.assert_allclose(np.abs(L), np.eye(4), atol=1e-15)
    assert is_lorentz(L)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ic_congruence(k):
    es = es_of(k)
    L = build_L_Ic(es)
    assert is_lorentz(L)
    ev = es.eigenvalues
    target = np.diag([ev[0], -ev[1], -ev[2], -ev[3]])
    assert np.max(np.abs(L @ es.omega.omega0 @ L.T - target)) < 1e-7


def test_example1_canonical_omega():
    es = es_of(1)
    L = build_L_Ic(es)
    np.testing.assert_allclose(np.diag(L @ es.omega.omega0 @ L.T), [0.921, -0.503, -0.366, -0.109], atol=2e-3)


def test_build_l_wrong_class():
    with pytest.raises(NotTetrad):
        build_L_Ic(es_of(4))
    with pytest.raises(NotTriad):
        build_L_IIc(es_of(1))


def test_example4_iic_frame():
    es = es_of(4)
    L, chi0 = build_L_IIc(es)
    assert chi0 == pytest.approx(1 / 18)
    assert is_lorentz(L, 1e-7)
    target = omega_IIc(1 / 36, 1 / 36, chi0)
    assert target[0, 3] == pytest.approx(1 / 36)
    assert np.max(np.abs(L @ es.omega.omega0 @ L.T - target)) < 1e-7


def test_example_canonical_forms():
    rounded = {1: (0.739, 0.630, 0.344), 2: (0.705, 0.492, 0.219), 3: (0.704, 0.679, 0.383)}
    for k, vals in rounded.items():
        c = canonicalize_omega(omega_from_matrix(EXAMPLE_OMEGA[k]))
        assert c.cls == "Ic"
        np.testing.assert_allclose(np.abs(np.diag(c.lambda_canonical))[1:], vals, atol=2e-3)
    c = canonicalize_omega(omega_from_matrix(EXAMPLE_OMEGA[4]))
    assert c.cls == "IIc"
    assert c.s0 == pytest.approx(0.5) and c.s1 == pytest.approx(1 / np.sqrt(2), abs=1e-9)
    np.testing.assert_allclose(c.lambda_canonical, lambda_IIc(0.5, 1 / np.sqrt(2)), atol=1e-9)


def test_omega_only_physicality():
    # Example 1 has no positive canonical state for either sign; 2 and 3 need sign -1
    c1 = canonicalize_omega(omega_from_matrix(EXAMPLE_OMEGA[1]))
    assert not c1.physical and c1.rho_min_eigenvalue == pytest.approx(-0.17844, abs=1e-5)
    for k in (2, 3):
        c = canonicalize_omega(omega_from_matrix(EXAMPLE_OMEGA[k]))
        assert c.physical and c.sign == -1
        assert validate_density(c.rho_canonical).ok
    assert not canonicalize_omega(omega_from_matrix(EXAMPLE_OMEGA[2]), sign=1).physical


def test_rho_ic_values():
    np.testing.assert_allclose(rho_canonical_Ic([1, 0, 0, 0]), np.eye(4) / 4, atol=1e-15)
    rho = rho_canonical_Ic([1, 1, 1, 1], sign=-1)
    lam = lambda_from_rho(rho)
    np.testing.assert_allclose(lam, np.diag([1.0, 1, 1, -1]), atol=1e-15)
    assert np.linalg.eigvalsh(rho)[-1] == pytest.approx(1.0)
    with pytest.raises(NotPositive):
        rho_canonical_Ic([1, 1, 1, 1], sign=1)


def test_rho_ic_example1_operator():
    ev = es_of(1).eigenvalues
    r = np.sqrt(ev[1:] / ev[0])
    rho = rho_canonical_Ic(ev, sign=1, validate=False)
    k = lambda a: np.kron(SIGMA[a], SIGMA[a])
    expected = 0.25 * (k(0) + r[0] * k(1) + r[1] * k(2) + r[2] * k(3))
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_rho_iic_values():
    s1 = 1 / np.sqrt(2)
    k = lambda a, b: np.kron(SIGMA[a], SIGMA[b])
    np.testing.assert_allclose(rho_canonical_IIc(1.0, 0.0), 0.25 * (k(0, 0) + k(3, 3)), atol=1e-15)
    rho = rho_canonical_IIc(0.5, s1)
    expected = 0.25 * (k(0, 0) + 0.5 * k(0, 3) + s1 * (k(1, 1) - k(2, 2)) + 0.5 * k(3, 3))
    np.testing.assert_allclose(rho, expected, atol=1e-15)
    with pytest.raises(NotPositive):
        rho_canonical_IIc(0.5, 0.9)


def test_iic_positivity_region():
    # positive exactly when s1^2 <= s0 <= 1
    for s0 in (0.2, 0.5, 0.8):
        edge = np.sqrt(s0)
        assert np.linalg.eigvalsh(rho_canonical_IIc(s0, edge, validate=False))[0] >= -1e-12
        assert np.linalg.eigvalsh(rho_canonical_IIc(s0, edge + 1e-3, validate=False))[0] < 0


def synthetic_iic(s0, s1, rng):
    lam = lambda_IIc(s0, s1)
    return random_orbit_point(lam, rng)


@pytest.mark.parametrize("s0,s1", [(0.6, 0.4), (0.5, 1 / np.sqrt(2)), (0.9, 0.2)])
def test_iic_round_trip(s0, s1, rng):
    for _ in range(10):
        lam = synthetic_iic(s0, s1, rng)
        c = canonicalize(lam, s0=s0)
        assert c.cls == "IIc"
        assert c.s0 == pytest.approx(s0, abs=1e-7)
        assert c.s1 == pytest.approx(s1, abs=1e-7)
        # the default gauge reads the same orbit as s0 = 1/2
        d = canonicalize(lam)
        assert d.s1 == pytest.approx(np.sqrt(s1**2 / (2 * s0)), abs=1e-7)


def test_factor_identity_and_lorentz(rng):
    for _ in range(100):
        lam = lambda_from_rho(random_density(rng))
        c = canonicalize(lam)
        assert is_lorentz(c.L_A, 1e-7) and is_lorentz(c.L_B, 1e-7)
        resid = c.L_A @ lam @ c.L_B.T - c.factor * c.lambda_canonical
        assert np.max(np.abs(resid)) < 1e-6
        om = c.eigensystem.omega
        assert np.max(np.abs(c.L_B @ om.omega @ c.L_B.T - c.omega_canonical)) < 1e-7


def test_sign_rule_and_physicality(rng):
    for _ in range(200):
        lam = lambda_from_rho(random_density(rng))
        c = canonicalize(lam)
        assert np.sign(np.linalg.det(c.lambda_canonical)) == np.sign(np.linalg.det(lam))
        assert validate_density(c.rho_canonical).ok


def test_idempotence(rng):
    for _ in range(50):
        c = canonicalize(lambda_from_rho(random_density(rng)))
        again = canonicalize(c.lambda_canonical)
        np.testing.assert_allclose(again.lambda_canonical, c.lambda_canonical, atol=1e-7)
    c = canonicalize(lambda_IIc(0.5, 0.6))
    np.testing.assert_allclose(canonicalize(c.lambda_canonical).lambda_canonical, c.lambda_canonical, atol=1e-7)


def test_orbit_invariance_with_boosts(rng):
    lam = lambda_from_rho(random_density(rng))
    base = canonicalize(lam)
    for rapidity in (0.5, 2.0, 4.0):
        out, _ = transform_lambda(lam, boost([1, 2, 3], rapidity), boost([0, 1, -1], -rapidity))
        c = canonicalize(out)
        np.testing.assert_allclose(c.ratios, base.ratios, atol=1e-6)


def test_product_state_rejected():
    lam = lambda_from_rho(product_state([1, 0], [1, 1j]))
    with pytest.raises(SpectralFailure):
        canonicalize(lam)


def test_bell_and_mixed():
    c = canonicalize(np.diag([1.0, 1, -1, 1]))
    assert c.cls == "Ic" and c.ratios == pytest.approx([1, 1, 1])
    c = canonicalize(np.diag([1.0, 0, 0, 0]))
    assert c.cls == "Ic" and c.ratios == pytest.approx([0, 0, 0])
    np.testing.assert_allclose(c.lambda_canonical, np.diag([1.0, 0, 0, 0]), atol=1e-15)


def test_to_dict_fields():
    d = canonicalize_omega(omega_from_matrix(EXAMPLE_OMEGA[4])).to_dict()
    assert d["class"] == "IIc" and "sign" not in d and "L_A" not in d
    assert {"s0", "s1", "chi0", "L_B", "lambda_canonical", "eigenvalues"} <= set(d)
    d = canonicalize(np.diag([1.0, 0.5, -0.4, 0.3])).to_dict()
    assert d["sign"] == -1 and "s0" not in d and "L_A" in d
