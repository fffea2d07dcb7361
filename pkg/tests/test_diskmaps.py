import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carakit.diskmaps import (
    LensParameter, UnitComplex, cayley_inverse, halfplane_map, lens_map,
    principal_arg, principal_power,
)
from carakit.errors import DomainError, PoleError

disk_points = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(0, 0.999), st.floats(0, 2 * math.pi),
)
unimodular = st.floats(0, 2 * math.pi).map(lambda t: cmath.exp(1j * t))


@pytest.mark.parametrize("w, expected", [
    (1, 0.0),
    (-1, math.pi),
    (complex(-1, -0.0), math.pi),
    (1j, math.pi / 2),
    (-1j, -math.pi / 2),
])
def test_principal_arg_examples(w, expected):
    assert principal_arg(w) == pytest.approx(expected, abs=1e-15)


def test_principal_arg_of_zero():
    with pytest.raises(DomainError, match="argument of zero"):
        principal_arg(0)


@given(st.complex_numbers(max_magnitude=1e6).filter(lambda w: w != 0))
def test_principal_arg_range(w):
    a = principal_arg(w)
    assert -math.pi < a <= math.pi


def test_principal_arg_vectorised():
    out = principal_arg(np.array([1, -1, 1j]))
    np.testing.assert_allclose(out, [0, math.pi, math.pi / 2])


@pytest.mark.parametrize("z, lam, expected", [
    (0, 1, 1),
    (-0.5, 1, 1 / 3),
    (0.5, -1, 1 / 3),
])
def test_halfplane_examples(z, lam, expected):
    assert halfplane_map(z, lam) == pytest.approx(expected, abs=1e-15)


def test_halfplane_pole():
    with pytest.raises(PoleError):
        halfplane_map(1, 1)
    with pytest.raises(PoleError):
        halfplane_map(-1j, 1j)


def test_halfplane_rejects_non_unimodular():
    with pytest.raises(DomainError):
        halfplane_map(0.1, 0.5)


@given(disk_points, unimodular)
def test_halfplane_right_half_plane(z, lam):
    assert halfplane_map(z, lam).real > 0


def test_cayley_examples():
    assert cayley_inverse(1) == 0
    assert cayley_inverse(halfplane_map(0.3)) == pytest.approx(0.3, abs=1e-15)
    assert cayley_inverse(1j) == pytest.approx(1j, abs=1e-15)
    with pytest.raises(PoleError):
        cayley_inverse(-1)


def test_round_trip_on_sample(rng):
    r = 0.99 * np.sqrt(rng.uniform(0, 1, 1000))
    z = r * np.exp(2j * np.pi * rng.uniform(0, 1, 1000))
    np.testing.assert_allclose(cayley_inverse(halfplane_map(z, 1)), z, rtol=0, atol=1e-12)


def test_principal_power_examples():
    assert principal_power(4, 0.5) == pytest.approx(2)
    assert principal_power(1j, 0.5) == pytest.approx(cmath.exp(1j * math.pi / 4), abs=1e-15)
    for w in (3, -2, 1j, 0.5 - 7j):
        assert principal_power(w, 0) == 1
    assert principal_power(0, 0.5) == 0
    with pytest.raises(DomainError):
        principal_power(0, 0)
    with pytest.raises(DomainError):
        principal_power(0, -1)


@given(st.complex_numbers(min_magnitude=1e-6, max_magnitude=1e6), st.floats(-3, 3))
def test_principal_power_argument_scales(w, eps):
    a = principal_arg(w)
    if abs(eps * a) <= math.pi - 1e-9 and abs(eps) > 1e-12:
        assert principal_arg(principal_power(w, eps)) == pytest.approx(eps * a, abs=1e-9)


@given(disk_points, st.floats(0.01, 0.99))
def test_principal_power_sector(z, eps):
    w = halfplane_map(z)
    assert abs(principal_arg(principal_power(w, eps))) < eps * math.pi / 2 + 1e-12


def test_lens_examples():
    for a in (0.1, 0.5, 0.9):
        assert lens_map(0, a) == 0
    for x in (-0.9, -0.3, 0.2, 0.75):
        v = lens_map(x, 0.4)
        assert abs(v.imag) < 1e-15 and math.copysign(1, v.real) == math.copysign(1, x)
    # l(0.5) = 3, sqrt(3), Cayley inverse gives 2 - sqrt(3)
    assert lens_map(0.5, 0.5) == pytest.approx(2 - math.sqrt(3), abs=1e-15)
    step = cayley_inverse(principal_power(halfplane_map(0.5), 0.5))
    assert lens_map(0.5, 0.5) == step


def test_lens_domain():
    with pytest.raises(DomainError):
        lens_map(1.0, 0.5)
    with pytest.raises(DomainError):
        lens_map(0.2, 1.0)
    with pytest.raises(DomainError):
        LensParameter(0)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_lens_argument_bound(alpha):
    theta = np.linspace(0, 2 * np.pi, 4001)[:-1]
    sups = []
    for r in (0.9, 0.99, 0.999):
        w = lens_map(r * np.exp(1j * theta), alpha)
        sups.append(np.max(np.abs(principal_arg(halfplane_map(w)))))
    assert max(sups) <= alpha * math.pi / 2 + 1e-12
    assert sups == sorted(sups)
    assert sups[-1] > alpha * math.pi / 2 - 2e-3


def test_unit_complex():
    assert UnitComplex(1j).value == 1j
    assert UnitComplex.from_turns(0.25).value == pytest.approx(1j)
    with pytest.raises(DomainError):
        UnitComplex(1 + 1e-9)
