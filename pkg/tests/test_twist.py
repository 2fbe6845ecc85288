import importlib

import numpy as np
import pytest
from scipy.linalg import coshm, sinhm

from star_src.algebra.eset import cosh_matrix, sinh_matrix
from star_src.algebra.matfuncs import sinh_cosh
from star_src.algebra.twist import (cosh_ll, sinh_identity_residual, structure_diagnostics, twist,
                                    twist_derivative, twist_inverse, twist_jacobian_det, z_map)
from star_src.exception import TwistDivergenceError


@pytest.mark.parametrize("scale", [1e-3, 0.3, 2.0])
def test_sinh_cosh_matches_scipy(scale):
    rng = np.random.default_rng(7)
    R = scale * rng.standard_normal((5, 3, 3))
    sinh, cosh = sinh_cosh(R)
    for i in range(5):
        np.testing.assert_allclose(sinh[i], sinhm(R[i]), rtol=1e-10, atol=1e-14)
        np.testing.assert_allclose(cosh[i], coshm(R[i]), rtol=1e-10, atol=1e-14)


def test_example_twist_is_sinh(example):
    a = np.linspace(-3.0, 3.0, 13)[:, None]
    np.testing.assert_allclose(twist(example, a), np.sinh(a), rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(z_map(example, a), np.sinh(a), rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(twist_jacobian_det(example, a[:, 0:1]), np.cosh(a[:, 0]), rtol=1e-12)
    np.testing.assert_allclose(twist_inverse(example, a), np.arcsinh(a), rtol=1e-10, atol=1e-12)


def test_example_matrices(example):
    np.testing.assert_allclose(sinh_matrix(example, [1.0]), [[0.0, np.sinh(1.0)], [np.sinh(1.0), 0.0]])
    np.testing.assert_allclose(cosh_matrix(example, [1.0]), np.cosh(1.0) * np.eye(2))
    np.testing.assert_allclose(cosh_ll(example, [0.5]), [[np.cosh(0.5)]])


@pytest.mark.parametrize("name", ["example", "product_4d", "skewed_4d"])
def test_twist_roundtrip(request, name):
    e = request.getfixturevalue(name)
    a = np.random.default_rng(3).uniform(-2.0, 2.0, size=(200, e.n_a))
    np.testing.assert_allclose(twist_inverse(e, twist(e, a)), a, atol=1e-9)
    np.testing.assert_allclose(twist(e, twist_inverse(e, a)), a, atol=1e-9)
    assert sinh_identity_residual(e, a) < 1e-8


@pytest.mark.parametrize("name", ["example", "skewed_4d"])
def test_twist_odd_with_even_jacobian(request, name):
    e = request.getfixturevalue(name)
    a = np.random.default_rng(5).uniform(-2.0, 2.0, size=(50, e.n_a))
    np.testing.assert_allclose(twist(e, -a), -twist(e, a), atol=1e-12)
    np.testing.assert_allclose(twist_jacobian_det(e, -a), twist_jacobian_det(e, a), rtol=1e-12)
    np.testing.assert_allclose(twist(e, np.zeros(e.n_a)), np.zeros(e.n_a), atol=0)


def test_flat_limit(skewed_4d):
    a = np.array([0.7, -1.3])
    eps = 1e-7
    np.testing.assert_allclose(twist(skewed_4d, eps * a) / eps, a, rtol=1e-6)


def test_derivative_matches_finite_differences(skewed_4d):
    a = np.array([0.4, -0.9])
    h = 1e-6
    columns = [(twist(skewed_4d, a + h * d) - twist(skewed_4d, a - h * d)) / (2 * h) for d in np.eye(2)]
    numeric = np.stack(columns, axis=-1)
    np.testing.assert_allclose(twist_derivative(skewed_4d, a), numeric, rtol=1e-6, atol=1e-8)
    assert abs(np.linalg.det(numeric)) == pytest.approx(abs(twist_jacobian_det(skewed_4d, a)), rel=1e-6)


def test_single_vector_shapes(example):
    assert twist(example, [0.5]).shape == (1,)
    assert isinstance(twist_jacobian_det(example, [0.5]), float)


def test_newton_cap(example, monkeypatch):
    monkeypatch.setattr(importlib.import_module("star_src.algebra.twist"), "NEWTON_MAX_ITER", 0)
    with pytest.raises(TwistDivergenceError) as info:
        twist_inverse(example, [0.9])
    assert info.value.iterations == 0


@pytest.mark.parametrize("name", ["example", "product_4d", "skewed_4d"])
def test_diagnostics(request, name):
    diagnostics = structure_diagnostics(request.getfixturevalue(name))
    assert diagnostics["orientation"] == 1
    assert diagnostics["min_jacobian"] >= 1.0 - 1e-12
    assert diagnostics["hyperbolic"] is True


def test_inverse_of_mixed_magnitude_batch(example):
    # small targets converge in fewer steps than large ones
    a = np.linspace(-60.0, 60.0, 512)[:, None]
    x = twist_inverse(example, a)
    assert x.shape == a.shape
    np.testing.assert_allclose(x, np.arcsinh(a), rtol=1e-10, atol=1e-12)


def test_inverse_of_mixed_batch_in_four_dimensions(skewed_4d):
    rng = np.random.default_rng(11)
    a = rng.uniform(-1.0, 1.0, size=(64, 2)) * np.geomspace(1e-3, 8.0, 64)[:, None]
    np.testing.assert_allclose(twist(skewed_4d, twist_inverse(skewed_4d, a)), a, rtol=1e-9, atol=1e-10)
