import cmath
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from carakit.errors import ConvergenceError, DomainError, PreconditionError
from carakit.fixedpoint import (
    FixedPointFunction, apply_transform, classify_rotation, contraction_factor,
    fixed_point, max_modulus_on_circle, nfold_symmetry_check, sample_disk, tail_bound,
    terms_for, transform_power,
)
from carakit.model import ONE, Z, HalfPlane, Rotation, evaluate, iterate

GOLDEN = cmath.exp(2j * math.pi * (math.sqrt(5) - 1) / 2)
F1 = HalfPlane() @ (Z / 4)


def oracle_product(z, n=200):
    # prod_k l(phi_k(z)/4) with phi = z/2, so phi_k(z) = z/2^k
    out = 1 + 0j
    for k in range(n):
        w = z / 2**k / 4
        out *= (1 + w) / (1 - w)
    return out


@pytest.mark.parametrize("phi, tag, order", [
    (Z, "identity", 1),
    (Rotation(cmath.exp(2j * math.pi / 3)), "rational", 3),
    (Rotation(-1), "rational", 2),
    (Rotation(GOLDEN), "irrational", None),
    (Z / 2, "not-rotation", None),
    (Z**2, "not-rotation", None),
    (Z * (1 + Z) / 2, "not-rotation", None),
])
def test_classify_rotation(phi, tag, order):
    rc = classify_rotation(phi)
    assert rc.tag == tag and rc.order == order
    assert rc.to_dict()["tag"] == tag


@pytest.mark.parametrize("phi, r, expected", [
    (Z * (1 + Z) / 2, 0.5, 0.75),
    (Z**2, 0.8, 0.8),
    (Z / 2, 0.3, 0.5),
    (Z * (Z - 0.5) / (1 - 0.5 * Z), 0.5, (0.5 + 0.5) / (1 + 0.25)),
])
def test_contraction_factor(phi, r, expected):
    assert contraction_factor(phi, r) == pytest.approx(expected, rel=1e-10)


def test_contraction_factor_refuses_rotation():
    with pytest.raises(PreconditionError):
        contraction_factor(Rotation(1j), 0.5)
    with pytest.raises(DomainError):
        contraction_factor(Z / 2, 1.0)


def test_max_modulus_between_samples():
    # peak at theta = pi/M, halfway between samples
    M = 16
    phi = Z * (1 + cmath.exp(-1j * math.pi / M) * Z) / 2
    assert max_modulus_on_circle(phi, 0.5, M) == pytest.approx(0.5 * 1.5 / 2, rel=1e-10)


def test_apply_transform_example():
    assert apply_transform(F1, Z / 2, HalfPlane(), 0.4) == pytest.approx((1.1 / 0.9) * (1.2 / 0.8), rel=1e-15)


def test_transform_power_is_repeated_application():
    z = 0.3 + 0.2j
    f = HalfPlane()
    g = f
    for _ in range(3):
        g = F1 * (g @ (Z / 2))
    assert transform_power(F1, Z / 2, f, 3, z) == pytest.approx(evaluate(g, z), rel=1e-14)


def test_tail_bound_and_terms():
    assert tail_bound(0.8, 0.5, 0) == pytest.approx(8 / 0.5)
    n = terms_for(0.8, 0.5, 1e-12)
    assert tail_bound(0.8, 0.5, n) < 1e-12 <= tail_bound(0.8, 0.5, n - 1)


def test_constant_F_gives_one():
    res = fixed_point(ONE, Z / 2)
    pts = sample_disk(0.8)
    np.testing.assert_allclose(res.G(pts), 1, atol=1e-15)


def test_fixed_point_against_oracle():
    res = fixed_point(F1, Z / 2, r=0.8, tol=1e-12)
    assert res.residual < 1e-10 and res.g0_error < 1e-12
    assert res.delta == pytest.approx(0.5, rel=1e-12)
    for z in (0.5, -0.7, 0.3 + 0.6j, 0.8j):
        assert res.G(z) == pytest.approx(oracle_product(z), rel=1e-12)
    assert res.min_real_part > 0


def test_seed_independence():
    res = fixed_point(F1, Z / 2)
    pts = sample_disk(0.8)
    a = transform_power(F1, Z / 2, HalfPlane(), res.n_terms, pts)
    b = transform_power(F1, Z / 2, ONE, res.n_terms, pts)
    assert np.max(np.abs(a - b)) < 2e-10
    assert np.max(np.abs(a - res.G(pts))) < 2e-10


def test_second_pair_residual_and_stability():
    F = HalfPlane() @ (Z**2 / 8)
    phi = Z * (1 + Z) / 4
    res = fixed_point(F, phi, r=0.8, tol=1e-12)
    assert res.residual < 1e-10
    pts = sample_disk(0.8)
    doubled = FixedPointFunction(F, phi, 2 * res.n_terms)(pts)
    assert np.max(np.abs(doubled - res.G(pts))) < 1e-10


def test_iterate_decay():
    phi = Z * (1 + Z) / 4
    r = 0.8
    delta = contraction_factor(phi, r)
    pts = sample_disk(r)
    zk = pts.copy()
    for k in range(1, 31):
        zk = evaluate(phi, zk)
        assert np.all(np.abs(zk) <= delta**k * np.abs(pts) * (1 + 1e-12) + 1e-300)


def test_factor_bound():
    r, delta = 0.8, 0.5
    pts = sample_disk(r)
    for k in range(20):
        w = evaluate(iterate(Z / 2, k), pts)
        assert np.all(np.abs(1 - evaluate(F1, w)) <= 2 * r / (1 - r) * delta**k)


def test_fixed_point_in_class():
    res = fixed_point(F1, Z / 2)
    pts = sample_disk(0.8)
    g = res.G(pts)
    assert np.all(np.isfinite(g)) and np.all(g.real > 0)
    assert res.G(0) == 1


def test_refusals():
    with pytest.raises(PreconditionError):
        fixed_point(F1, Rotation(1j))
    with pytest.raises(PreconditionError):
        fixed_point(HalfPlane() ** 0.9, Z * 0.9)
    with pytest.raises(ConvergenceError):
        fixed_point(F1, Z / 2, n_max=5)
    with pytest.raises(DomainError):
        fixed_point(F1, Z / 2, r=1.0)


def test_nfold_symmetry():
    w3 = cmath.exp(2j * math.pi / 3)
    assert nfold_symmetry_check(HalfPlane() @ Z**3, 3)
    assert not nfold_symmetry_check(HalfPlane(), 2)
    # the fixed point under an order-3 rotation: any f(z^3) works
    f = HalfPlane() @ (Z**3 / 2)
    assert apply_transform(ONE, Rotation(w3), f, 0.4 + 0.1j) == pytest.approx(evaluate(f, 0.4 + 0.1j))
    with pytest.raises(DomainError):
        nfold_symmetry_check(Z, 0)


def test_memo_is_transparent_and_thread_safe():
    G = FixedPointFunction(F1, Z / 2, 44)
    pts = sample_disk(0.8)
    first = G(pts)
    assert G.cache_size() == len(pts)
    fresh = FixedPointFunction(F1, Z / 2, 44)._compute(pts)
    assert np.array_equal(first, fresh)
    chunks = np.array_split(sample_disk(0.7, 13, 40), 8)
    with ThreadPoolExecutor(4) as ex:
        outs = list(ex.map(G, chunks))
    for c, o in zip(chunks, outs):
        assert np.array_equal(o, G._compute(c))
