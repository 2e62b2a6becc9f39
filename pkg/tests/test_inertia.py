import numpy as np
import pytest
from hypothesis import given, strategies as st

from riemann_spheroids import inertia, numerics
from riemann_spheroids.kinematics import PhysicalParams, Spheroid, VelocityPair, generator, metric_pair, rotation

seeds = st.integers(0, 2 ** 31)
UNIT = PhysicalParams()


def random_config(g, scale=0.2):
    F = np.eye(3) + scale * g.standard_normal((3, 3))
    return F / np.cbrt(np.linalg.det(F))


@given(seeds)
def test_block_matrix_matches_trace_form(seed):
    params = UNIT
    g = np.random.default_rng(seed)
    F = random_config(g)
    M = inertia.locked_inertia(F, params)
    np.testing.assert_allclose(M, M.T, atol=1e-13)
    x, y = (VelocityPair.from_vector(g.standard_normal(6)) for _ in range(2))
    assert x.as_vector() @ M @ y.as_vector() == pytest.approx(
        inertia.locked_inertia_form(F, x, y, params), rel=1e-11, abs=1e-12)


@given(seeds)
def test_locked_inertia_is_kinetic_metric_on_generators(seed):
    params = UNIT
    g = np.random.default_rng(seed)
    F = random_config(g)
    x = VelocityPair.from_vector(g.standard_normal(6))
    gx = generator(x, F)
    assert inertia.locked_inertia_form(F, x, x, params) == pytest.approx(
        metric_pair(gx, gx, params), rel=1e-11, abs=1e-12)


@given(seeds, st.floats(0.1, 3.0))
def test_equivariance(seed, angle):
    params = UNIT
    g = np.random.default_rng(seed)
    F = random_config(g)
    L, R = rotation([1, 0, 2], angle), rotation([2, -1, 1], 0.5 * angle)
    x = VelocityPair.from_vector(g.standard_normal(6))
    moved = VelocityPair(L @ x.xi_L, R @ x.xi_R)
    assert inertia.locked_inertia_form(L @ F @ R.T, moved, moved, params) == pytest.approx(
        inertia.locked_inertia_form(F, x, x, params), rel=1e-10, abs=1e-12)


def test_momentum_is_inertia_times_velocity(params, rng):
    F = random_config(rng)
    x = VelocityPair.from_vector(rng.standard_normal(6))
    mu = inertia.momentum(F, x, params)
    np.testing.assert_allclose(mu.as_vector(), inertia.locked_inertia(F, params) @ x.as_vector(),
                               atol=1e-12)


def test_sphere_kernel(params):
    # diagonal rotations fix the sphere, so they are in the kernel
    v = np.array([0.3, -1.0, 2.0])
    x = VelocityPair(v, v)
    assert np.allclose(inertia.locked_inertia(np.eye(3), params) @ x.as_vector(), 0)


def test_derivative_of_locked_inertia(params, rng):
    F = random_config(rng)
    A = rng.standard_normal((3, 3))
    x, y = (VelocityPair.from_vector(rng.standard_normal(6)) for _ in range(2))
    h = 1e-6
    fd = (inertia.locked_inertia_form(F + h * A, x, y, params)
          - inertia.locked_inertia_form(F - h * A, x, y, params)) / (2 * h)
    assert inertia.d_locked_inertia(F, A, x, y, params) == pytest.approx(fd, rel=1e-7)
    cov = inertia.d_locked_inertia_covector(F, A, x, params)
    assert cov @ y.as_vector() == pytest.approx(fd, rel=1e-7)


def test_second_derivative_of_locked_inertia(params, rng):
    F = random_config(rng)
    A, B = rng.standard_normal((2, 3, 3))
    x = VelocityPair.from_vector(rng.standard_normal(6))
    h = 1e-4
    f = lambda s, t: inertia.locked_inertia_form(F + s * A + t * B, x, x, params)
    fd = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h)
    assert inertia.d2_locked_inertia(F, A, B, x, params) == pytest.approx(fd, rel=1e-6)


def test_second_derivative_of_det(rng):
    F = random_config(rng)
    A, B = rng.standard_normal((2, 3, 3))
    h = 1e-4
    f = lambda s, t: np.linalg.det(F + s * A + t * B)
    fd = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h)
    assert inertia.d2_det(F, A, B) == pytest.approx(fd, rel=1e-7)


def test_gradient_against_finite_differences(params, rng):
    F = random_config(rng, 0.1)
    x = VelocityPair.from_vector(0.4 * rng.standard_normal(6))
    lam = 1.3
    G = inertia.d_v2aug(F, x, lam, params)
    fd = numerics.fd_derivative(lambda X: inertia.v2aug(X, x, lam, params), F, 1, 1e-5)
    np.testing.assert_allclose(G, fd, rtol=0, atol=1e-7 * np.abs(G).max())


def test_hessian_against_finite_differences(params, rng):
    from riemann_spheroids.potential import potential_derivs_at
    F = random_config(rng, 0.1)
    x = VelocityPair.from_vector(0.4 * rng.standard_normal(6))
    lam = 0.9
    A, B = rng.standard_normal((2, 3, 3))
    h = 1e-5

    def grad_B(X):
        return float(np.sum(inertia.d_v2aug(X, x, lam, params, potential_derivs_at(X, params)) * B))

    fd = (grad_B(F + h * A) - grad_B(F - h * A)) / (2 * h)
    val = inertia.hess_v2aug(F, x, lam, A, B, params, potential_derivs_at(F, params))
    assert val == pytest.approx(fd, rel=1e-6)


def test_hessian_is_symmetric(params, rng):
    F = Spheroid.oblate(0.4).matrix
    x = VelocityPair.from_vector(rng.standard_normal(6))
    A, B = rng.standard_normal((2, 3, 3))
    assert inertia.hess_v2aug(F, x, 1.0, A, B, params) == pytest.approx(
        inertia.hess_v2aug(F, x, 1.0, B, A, params), rel=1e-12)
