import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riemann_spheroids import potential
from riemann_spheroids.errors import DomainError, UnsupportedPair
from riemann_spheroids.kinematics import Spheroid, rotation
from riemann_spheroids.potential import SUPPORTED_PAIRS, J_closed, J_quad

mpmath.mp.dps = 30


def j_mpmath(sph, k, r):
    I1 = float(np.sum(sph.matrix ** 2))
    a2, c2 = sph.a ** 2, sph.c ** 2
    I2 = a2 * a2 + 2 * a2 * c2
    f = lambda s: s ** r / (s ** 3 + I1 * s ** 2 + I2 * s + 1) ** (mpmath.mpf(k) / 2)
    return float(mpmath.quad(f, [0, 1, 10, mpmath.inf]))


@pytest.mark.parametrize("k,r", SUPPORTED_PAIRS)
@pytest.mark.parametrize("make", [Spheroid.oblate, Spheroid.prolate])
@pytest.mark.parametrize("e", [0.02, 0.37, 0.81, 0.97])
def test_closed_form_vs_mpmath(make, e, k, r):
    sph = make(e)
    assert J_closed(sph, k, r) == pytest.approx(j_mpmath(sph, k, r), rel=1e-10)


@settings(max_examples=25)
@given(st.floats(0.001, 0.99), st.sampled_from(SUPPORTED_PAIRS), st.booleans())
def test_closed_form_vs_quadrature(e, pair, oblate):
    sph = Spheroid.oblate(e) if oblate else Spheroid.prolate(e)
    assert J_closed(sph, *pair) == pytest.approx(J_quad(sph, *pair), rel=1e-9)


def test_sphere_beta_identity():
    # on the unit sphere J(k, r) = B(r + 1, 3k/2 - r - 1)
    sph = Spheroid.sphere()
    for k, r in SUPPORTED_PAIRS:
        ref = float(mpmath.beta(r + 1, 1.5 * k - r - 1))
        assert J_closed(sph, k, r) == pytest.approx(ref, rel=1e-13)


def test_small_eccentricity_continuity():
    sph = Spheroid.sphere()
    for k, r in SUPPORTED_PAIRS:
        for make in (Spheroid.oblate, Spheroid.prolate):
            assert J_closed(make(1e-6), k, r) == pytest.approx(J_closed(sph, k, r), rel=1e-10)


def test_pair_errors():
    with pytest.raises(UnsupportedPair):
        J_closed(Spheroid.oblate(0.5), 7, 1)
    with pytest.raises(DomainError):
        potential.J_quad_invariants(3.0, 3.0, 1, 1)


def test_first_derivatives_sum_on_sphere(params):
    d = potential.potential_derivs(Spheroid.sphere(), params)
    assert d.V1 + d.V2 == pytest.approx(2 * params.R / 15, rel=1e-13)


@pytest.mark.parametrize("make,e", [(Spheroid.oblate, 0.6), (Spheroid.prolate, 0.4)])
def test_derivatives_by_finite_differences(make, e, params):
    sph = make(e)
    F = sph.matrix
    I1 = float(np.sum(F ** 2))
    I2 = float(np.sum(np.linalg.inv(F) ** 2))    # det F = 1
    d = potential.potential_derivs(sph, params)
    h = 1e-4

    def V(i1, i2):
        return -params.R * potential.J_quad_invariants(i1, i2, 1, 0, potential.FINE_QUAD)

    def V1(i1, i2):
        return 0.5 * params.R * potential.J_quad_invariants(i1, i2, 3, 2, potential.FINE_QUAD)

    def V2(i1, i2):
        return 0.5 * params.R * potential.J_quad_invariants(i1, i2, 3, 1, potential.FINE_QUAD)

    assert (V(I1 + h, I2) - V(I1 - h, I2)) / (2 * h) == pytest.approx(d.V1, rel=1e-7)
    assert (V(I1, I2 + h) - V(I1, I2 - h)) / (2 * h) == pytest.approx(d.V2, rel=1e-7)
    assert (V1(I1 + h, I2) - V1(I1 - h, I2)) / (2 * h) == pytest.approx(d.V11, rel=1e-7)
    assert (V1(I1, I2 + h) - V1(I1, I2 - h)) / (2 * h) == pytest.approx(d.V12, rel=1e-7)
    assert (V2(I1, I2 + h) - V2(I1, I2 - h)) / (2 * h) == pytest.approx(d.V22, rel=1e-7)


def test_rotated_configuration_uses_invariants(params):
    sph = Spheroid.prolate(0.7)
    Q1, Q2 = rotation([1, 2, 3], 0.3), rotation([0, 1, -1], 1.7)
    F = Q1 @ sph.matrix @ Q2.T
    assert potential.spheroid_of(F) is None
    a = potential.derivs_for(F, params).as_dict()
    b = potential.potential_derivs(sph, params).as_dict()
    for key in a:
        assert a[key] == pytest.approx(b[key], rel=1e-10)


def test_spheroid_recognition():
    sph = Spheroid.oblate(0.3)
    assert potential.spheroid_of(sph.matrix).ecc == pytest.approx(0.3)
    assert potential.spheroid_of(np.diag([1.0, 1.1, 1 / 1.1])) is None


def test_potential_value_scales_with_r():
    from riemann_spheroids.kinematics import PhysicalParams
    F = Spheroid.oblate(0.5).matrix
    a = potential.potential_value(F, PhysicalParams(1.0, 1.0))
    b = potential.potential_value(F, PhysicalParams(2.0, 3.0))
    assert b / a == pytest.approx(12.0, rel=1e-14)
    assert a == pytest.approx(-PhysicalParams().R * J_closed(Spheroid.oblate(0.5), 1, 0),
                              rel=1e-12)
