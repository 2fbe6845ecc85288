import json

import numpy as np
import pytest

from star_src.algebra.eset import ESETStructure, load_structure
from star_src.constants import EXAMPLE_STRUCTURE_FILEPATH
from star_src.harness import fixtures
from star_src.transform.grid import PhaseSpaceGrid


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run full-size suite tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def example():
    return load_structure(EXAMPLE_STRUCTURE_FILEPATH)


@pytest.fixture(scope="session")
def product_4d():
    """Two commuting copies of the 2D example: b = span(k1, k2, l1, l2), B = I."""
    rho = np.zeros((2, 4, 4))
    rho[0, 0, 2] = rho[0, 2, 0] = 1.0
    rho[1, 1, 3] = rho[1, 3, 1] = 1.0
    return ESETStructure("product-4d", 2, 2, 2, rho, [1.0, 1.0])


@pytest.fixture(scope="session")
def skewed_4d():
    """Commuting rho(e_i) with a non-diagonal pairing matrix."""
    X1 = np.array([[1.0, 0.0], [0.0, 1.0]])
    X2 = np.array([[0.5, 0.0], [0.0, -1.0]])
    rho = np.zeros((2, 4, 4))
    for i, X in enumerate((X1, X2)):
        rho[i, :2, 2:] = X
        rho[i, 2:, :2] = X
    return ESETStructure("skewed-4d", 2, 2, 2, rho, [1.0, 0.5])


@pytest.fixture
def singular_structure():
    return ESETStructure("singular", 1, 1, 1, [[[0.0, 1.0], [1.0, 0.0]]], [0.0])


@pytest.fixture
def write_structure(tmp_path):
    def write(raw, name="structure.json"):
        path = tmp_path / name
        path.write_text(raw if isinstance(raw, str) else json.dumps(raw), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def gaussian_grid():
    def make(center_a=0.0, center_l=0.0, width_a=1.0, width_l=1.0, points=64, extent=8.0,
             hbar=2.0, a_extent=None):
        func = fixtures.gaussian((center_a,), (center_l,), width_a, width_l)
        return PhaseSpaceGrid.from_function(func, 1, 1, points, extent, hbar, a_extent=a_extent)
    return make
