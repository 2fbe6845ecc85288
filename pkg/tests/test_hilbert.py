import numpy as np
import pytest

from star_src.entity.config_entity import StarParams
from star_src.geometry.points import Point
from star_src.harness import fixtures
from star_src.star import (inner_product_E, inner_product_L2,
                           operator_norm_estimate, trace, weyl_product_fft)
from star_src.transform import symmetry_pullback
from star_src.transform.grid import PhaseSpaceGrid


def _sample(func, points=64, extent=8.0, hbar=2.0):
    return PhaseSpaceGrid.from_function(func, 1, 1, points, extent, hbar)


@pytest.fixture
def pair():
    u = _sample(fixtures.gaussian((0.1,), (-0.2,), 0.5, 0.6))
    envelope = fixtures.gaussian((-0.2,), (0.3,), 0.6, 0.7)
    v = _sample(lambda a, l: envelope(a, l) * np.exp(0.5j * l[..., 0]))
    return u, v


def test_trace_of_gaussian():
    u = _sample(fixtures.gaussian((0.3,), (-0.4,), 0.5, 1.0))
    assert trace(u) == pytest.approx(np.pi, rel=1e-9)
    assert trace(u, np.array([[2.0]])) == pytest.approx(2.0 * np.pi, rel=1e-9)


def test_inner_product_L2(pair):
    u, v = pair
    assert inner_product_L2(u, v) == pytest.approx(np.conj(inner_product_L2(v, u)))
    assert inner_product_L2(u, u).real == pytest.approx(u.norm() ** 2)
    assert abs(inner_product_L2(u, u).imag) < 1e-12 * u.norm() ** 2


def test_trace_of_product_is_inner_product(pair):
    u, v = pair
    product = weyl_product_fft(u, v.with_data(np.conj(v.data)), 2.0)
    assert trace(product) == pytest.approx(inner_product_L2(u, v), rel=1e-8)


def test_flat_E_inner_product_is_L2(example, pair):
    u, v = pair
    assert inner_product_E(example, u, v, 2.0, flat=True) == pytest.approx(inner_product_L2(u, v), rel=1e-12)


def test_symmetry_pullback_is_unitary(example, pair):
    u, v = pair
    x = Point([0.2], [0.3])
    moved = inner_product_L2(symmetry_pullback(example, x, u), symmetry_pullback(example, x, v))
    assert moved == pytest.approx(inner_product_L2(u, v), rel=1e-6)


@pytest.mark.parametrize("x", [Point([0.2], [0.3]), Point([-0.25], [-0.4])])
def test_symmetry_pullback_is_unitary_for_E(example, x):
    u = _sample(fixtures.gaussian((0.2,), (0.3,), 0.5, 1.0))
    v = _sample(fixtures.gaussian((-0.1,), (-0.2,), 0.5, 1.0))
    reference = inner_product_E(example, u, v, 2.0, oversample=4)
    moved = inner_product_E(example, symmetry_pullback(example, x, u), symmetry_pullback(example, x, v), 2.0,
                            oversample=4)
    assert moved == pytest.approx(reference, rel=1e-5)


def test_operator_norm_of_zero(example):
    zero = PhaseSpaceGrid.uniform(1, 1, 16, 4.0, 2.0)
    assert operator_norm_estimate(example, zero, StarParams()) == 0.0


def test_operator_norm_of_projection(example):
    u0 = _sample(fixtures.ground_state(2.0))
    estimate = operator_norm_estimate(example, u0, StarParams(hbar=2.0, method="flat"), iterations=10)
    assert estimate == pytest.approx(1.0, abs=0.05)
