import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carakit.errors import CertificationError, DomainError, PoleError
from carakit.model import (
    ONE, Z, Compose, Const, DiskGrid, HalfPlane, Iterate, Lens, Power, Rotation,
    certify_positive_real, certify_schwarz, evaluate, iterate, omega_of,
    sup_norm_estimate, to_F,
)


@pytest.mark.parametrize("f, z, expected", [
    (HalfPlane(), 0, 1),
    (Z * (1 + Z) / 2, 1, 1),
    (Z * (2 - Z) / 18, -1, -3 / 18),
    (HalfPlane() @ (Z / 4), 0.4, 1.1 / 0.9),
])
def test_evaluate_examples(f, z, expected):
    assert evaluate(f, z) == pytest.approx(expected, abs=1e-15)


def test_evaluate_domain_and_pole():
    with pytest.raises(DomainError):
        evaluate(Z, 1.01)
    with pytest.raises(PoleError) as info:
        evaluate(ONE / Z, np.array([0.5, 0.0]))
    assert info.value.subexpr == "z"
    assert info.value.point == 0
    with pytest.raises(PoleError):
        evaluate(HalfPlane(), 1)


def test_evaluate_preserves_shape():
    z = np.zeros((3, 4), dtype=complex)
    assert evaluate(Z + 1, z).shape == (3, 4)
    assert isinstance(evaluate(Z + 1, 0.5), complex)


def test_operator_tree_structure():
    f = (Z + 1) * Z
    assert f.size == 5 and f.depth == 3
    assert (HalfPlane() @ Z) == Compose(HalfPlane(), Z)
    assert (Z**2) == Power(Z, 2.0)


@pytest.mark.parametrize("phi, n, z, expected", [
    (Z / 2, 0, 0.3, 0.3),
    (Z / 2, 3, 0.8, 0.1),
    (Z**2, 3, 0.9, 0.9**8),
])
def test_iterate_examples(phi, n, z, expected):
    assert evaluate(iterate(phi, n), z) == pytest.approx(expected, rel=1e-14)


def test_iterate_large_uses_node_and_agrees():
    phi = Z * (1 + Z) / 2
    big = iterate(phi, 400)
    assert isinstance(big, Iterate)
    w = 0.7 + 0.1j
    for _ in range(400):
        w = w * (1 + w) / 2
    assert evaluate(big, 0.7 + 0.1j) == pytest.approx(w, rel=1e-12)
    with pytest.raises(DomainError):
        iterate(phi, -1)


@pytest.mark.parametrize("f, expected", [
    (0.3 * Z, 0.3 * (1 - 1e-6)),
    (Z * (1 + Z) / 2, (1 - 1e-6) * (2 - 1e-6) / 2),
    (Z * (2 - Z) / 18, (1 - 1e-6) * (3 - 1e-6) / 18),
])
def test_sup_norm_examples(f, expected):
    assert sup_norm_estimate(f) == pytest.approx(expected, rel=1e-9)


@given(st.floats(0.05, 0.9), st.floats(0.05, 0.09))
def test_sup_norm_monotone_in_radius(r, dr):
    f = Z * (1 + Z) / 2
    assert sup_norm_estimate(f, 256, r) <= sup_norm_estimate(f, 256, r + dr) + 1e-15


def test_default_grid():
    g = DiskGrid.default()
    assert len(g.radii) == 41
    np.testing.assert_allclose(g.radii, 1 - 2.0 ** (-np.arange(41) / 4), rtol=0, atol=1e-15)
    assert np.all(np.diff(g.radii) > 0)
    pts = g.points()
    assert len(pts) == 40 * 64 + 1
    assert np.count_nonzero(pts == 0) == 1
    assert np.abs(pts).max() == pytest.approx(1 - 2.0**-10)
    assert g.describe()["n_points"] == len(pts)


@pytest.mark.parametrize("kwargs", [dict(J=0), dict(M=0), dict(r_max=1.0), dict(r_max=0.0)])
def test_invalid_grid(kwargs):
    with pytest.raises(DomainError):
        DiskGrid.geometric(**kwargs)


@pytest.mark.parametrize("f", [Z / 2, Z * (1 + Z) / 2, Z**2, Rotation(cmath.exp(1j)), Lens(0.5)])
def test_certify_schwarz_accepts(f, coarse_grid):
    s = certify_schwarz(f, coarse_grid)
    assert s.certificate.max_modulus < 1
    assert s(0) == 0


@pytest.mark.parametrize("f, witness_modulus", [
    (Z + 0.1, 0.0),
    (1.5 * Z, None),
    (Z * (1 + Z), None),
])
def test_certify_schwarz_rejects(f, witness_modulus, coarse_grid):
    with pytest.raises(CertificationError) as info:
        certify_schwarz(f, coarse_grid)
    w = info.value.witness
    assert w is not None
    if witness_modulus is not None:
        assert abs(w) == witness_modulus
    else:
        assert abs(evaluate(f, w)) > abs(w)


@pytest.mark.parametrize("F", [ONE, HalfPlane() ** 0.5, HalfPlane() @ (Z / 4), HalfPlane(), 1 + Z / 2])
def test_certify_positive_real_accepts(F, coarse_grid):
    P = certify_positive_real(F, coarse_grid)
    assert P(0) == pytest.approx(1)
    assert P.certificate.min_real_part > 0


def test_omega_exact_for_halfplane_composite():
    assert omega_of(HalfPlane() @ (Z / 4)) == Z / 4
    assert omega_of(HalfPlane()) == Z
    assert omega_of(to_F(Z**2)) == Z**2


@pytest.mark.parametrize("F, at_zero", [(2 + Z, True), (1 + 2 * Z, False)])
def test_certify_positive_real_rejects(F, at_zero, coarse_grid):
    with pytest.raises(CertificationError) as info:
        certify_positive_real(F, coarse_grid)
    assert (info.value.witness == 0) == at_zero


@pytest.mark.parametrize("F", [HalfPlane() ** 0.5, 1 + Z / 2, HalfPlane() @ (Z * (1 + Z) / 2)])
def test_F_omega_round_trip(F, coarse_grid):
    pts = coarse_grid.points()
    Fv = evaluate(F, pts)
    om = evaluate(omega_of(F), pts)
    np.testing.assert_allclose((1 + om) / (1 - om), Fv, rtol=1e-9)


def test_schwarz_lemma_equality_only_for_rotation(coarse_grid):
    pts = coarse_grid.points()[1:]
    rot = evaluate(Rotation(cmath.exp(0.7j)), pts)
    np.testing.assert_allclose(np.abs(rot), np.abs(pts), rtol=1e-14)
    for f in (Z**2, Z * (1 + Z) / 2, Z / 2):
        assert np.all(np.abs(evaluate(f, pts)) < np.abs(pts))


@pytest.mark.parametrize("F", [HalfPlane() ** 0.3, HalfPlane() @ (Z**3), 1 + Z / 3])
def test_growth_sandwich(F, coarse_grid):
    pts = coarse_grid.points()
    r = np.abs(pts)
    mod = np.abs(evaluate(F, pts))
    assert np.all(mod >= (1 - r) / (1 + r) * (1 - 1e-12))
    assert np.all(mod <= (1 + r) / (1 - r) * (1 + 1e-12))


@settings(max_examples=30)
@given(st.floats(0, 2 * math.pi), st.floats(0.05, 0.95), st.integers(1, 4))
def test_subordination_positive_real_part(t, a, k):
    lam = cmath.exp(1j * t)
    phi = a * Z**k
    F = HalfPlane(lam) @ phi
    theta = np.linspace(0, 2 * np.pi, 257)
    z = 0.999 * np.exp(1j * theta)
    assert np.all(evaluate(F, z).real > 0)


def test_str_uses_canonical_text():
    assert str(HalfPlane() @ (Z / 4)) == "l((z/4.0))"
    assert str(Const(2j)) == "(2.0*i)"
