import numpy as np
import pytest

from star_src.algebra.eset import pairing_matrix
from star_src.entity.config_entity import StarParams
from star_src.exception import AxiomViolationError, StarParamsError
from star_src.geometry.points import GroupElement
from star_src.harness import fixtures
from star_src.star import (poisson_bracket, star_hbar, star_hbar_kernel, weyl_product_fft,
                           weyl_product_quad)
from star_src.transform import act_on_grid, relative_error
from star_src.transform.grid import PhaseSpaceGrid


def _sample(func, hbar=2.0, points=64, extent=8.0):
    return PhaseSpaceGrid.from_function(func, 1, 1, points, extent, hbar)


@pytest.fixture(scope="module")
def oracle_pair():
    u = _sample(fixtures.gaussian((0.2,), (0.5,), 1.0, 1.0))
    v = _sample(fixtures.gaussian((-0.15,), (-0.5,), 1.0, 1.0))
    return u, v


@pytest.mark.parametrize("kwargs", [
    {"hbar": 0.0},
    {"hbar": -1.0},
    {"method": "moyal"},
    {"interpolation": "linear"},
    {"oversample": 3},
    {"oversample": 0},
    {"truncation_order": 7},
])
def test_params_validation(kwargs):
    with pytest.raises(StarParamsError):
        StarParams(**kwargs)


def test_params_with_hbar():
    params = StarParams(method="kernel").with_hbar(0.5)
    assert params.hbar == 0.5 and params.method == "kernel"


def test_flat_method_is_weyl(example, oracle_pair):
    u, v = oracle_pair
    flat = star_hbar(example, u, v, StarParams(hbar=2.0, method="flat"))
    np.testing.assert_array_equal(flat.data, weyl_product_fft(u, v, 2.0).data)
    kernel_flat = star_hbar_kernel(example, u, v, StarParams(hbar=2.0), flat=True)
    np.testing.assert_array_equal(kernel_flat.data, weyl_product_quad(u, v, 2.0).data)


def test_conjugation_matches_kernel(example, oracle_pair):
    u, v = oracle_pair
    conjugation = star_hbar(example, u, v, StarParams(hbar=2.0, oversample=4))
    kernel = star_hbar(example, u, v, StarParams(hbar=2.0, method="kernel"))
    assert conjugation.same_layout(u)
    assert relative_error(conjugation, kernel) < 1e-3


def test_deformed_product_needs_valid_structure(singular_structure, oracle_pair):
    u, v = oracle_pair
    with pytest.raises(AxiomViolationError):
        star_hbar(singular_structure, u, v, StarParams())


def test_conjugation_path_is_associative(example):
    params = StarParams(hbar=2.0, oversample=4)
    u, v, w = (_sample(fixtures.gaussian((ca,), (cl,), 1.0, 1.0))
               for ca, cl in [(0.3, 0.4), (-0.2, -0.3), (0.1, -0.6)])
    left = star_hbar(example, star_hbar(example, u, v, params), w, params)
    right = star_hbar(example, u, star_hbar(example, v, w, params), params)
    assert relative_error(left, right) < 1e-3


@pytest.mark.parametrize("elem, tol", [
    (GroupElement([0.4], [0.0], [0.0]), 1e-6),
    (GroupElement([-0.25], [0.02], [-0.015]), 1e-5),
])
def test_product_is_transvection_invariant(example, elem, tol):
    params = StarParams(hbar=2.0, oversample=4)
    u = _sample(fixtures.gaussian((0.3,), (0.4,), 0.9, 1.05))
    v = _sample(fixtures.gaussian((-0.2,), (-0.3,), 0.9, 1.05))
    moved = star_hbar(example, act_on_grid(example, elem, u), act_on_grid(example, elem, v), params)
    expected = act_on_grid(example, elem, star_hbar(example, u, v, params))
    assert relative_error(moved, expected) < tol


def test_semiclassical_slopes(example):
    B = pairing_matrix(example)
    hbars = [0.05, 0.1, 0.2, 0.4]
    defects, deviations = [], []
    for hbar in hbars:
        params = StarParams(hbar=hbar, oversample=4)
        u = _sample(fixtures.gaussian((0.3,), (0.4,), 0.6, 1.0), hbar)
        v = _sample(fixtures.gaussian((-0.2,), (-0.3,), 0.6, 1.0), hbar)
        uv = star_hbar(example, u, v, params)
        vu = star_hbar(example, v, u, params)
        bracket = poisson_bracket(u, v, B).data
        commutator = (uv.data - vu.data) / (2.0 * hbar / 2j)
        # the antisymmetrized first-order term is +{u, v}, not its negative
        assert np.linalg.norm(commutator - bracket) < np.linalg.norm(commutator + bracket)
        defects.append(np.linalg.norm(commutator - bracket) / np.linalg.norm(bracket))
        deviations.append(np.linalg.norm(uv.data - u.data * v.data))
    dirac = np.polyfit(np.log(hbars), np.log(defects), 1)[0]
    classical = np.polyfit(np.log(hbars), np.log(deviations), 1)[0]
    assert dirac == pytest.approx(2.0, abs=0.3)
    assert classical == pytest.approx(1.0, abs=0.3)
