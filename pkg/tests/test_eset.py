import numpy as np
import pytest

from star_src.algebra.eset import (AlgebraVector, ESETStructure, load_structure, omega_pair,
                                   pairing_matrix, require_valid, rho_apply, save_structure,
                                   validate)
from star_src.exception import (AxiomViolationError, StructureLoadError, StructureShapeError,
                                UnsupportedVectorError)


def test_example_is_valid(example):
    assert validate(example) == []
    assert require_valid(example) is example
    np.testing.assert_array_equal(pairing_matrix(example), [[1.0]])


@pytest.mark.parametrize("name", ["product_4d", "skewed_4d"])
def test_four_dimensional_structures_are_valid(request, name):
    assert validate(request.getfixturevalue(name)) == []


def test_skewed_pairing(skewed_4d):
    np.testing.assert_allclose(pairing_matrix(skewed_4d), [[1.0, 0.5], [0.5, -0.5]])


def test_singular_pairing(singular_structure):
    violations = validate(singular_structure)
    assert any(v.startswith("nondegeneracy") for v in violations)
    with pytest.raises(AxiomViolationError) as info:
        require_valid(singular_structure)
    assert info.value.violations == violations


def test_nonzero_diagonal_block():
    e = ESETStructure("kk", 1, 1, 1, [[[1.0, 1.0], [1.0, 0.0]]], [1.0])
    assert any("sigma anticommutation" in v and "KK" in v for v in validate(e))


@pytest.mark.parametrize("rho, blocks", [
    ([[[0.0, 1.0], [1.0, 2.0]]], "nonzero LL block"),
    ([[[1.0, 1.0], [1.0, 2.0]]], "nonzero KK and LL blocks"),
])
def test_diagonal_blocks_are_named(rho, blocks):
    violations = [v for v in validate(ESETStructure("blocks", 1, 1, 1, rho, [1.0])) if "sigma" in v]
    assert len(violations) == 1 and blocks in violations[0]


def test_noncommuting_rho():
    X1, X2 = np.eye(2), np.array([[0.0, 1.0], [0.0, 0.0]])
    Y2 = np.array([[0.0, 0.0], [1.0, 0.0]])
    rho = np.zeros((2, 4, 4))
    rho[0, :2, 2:], rho[0, 2:, :2] = X1, X1
    rho[1, :2, 2:], rho[1, 2:, :2] = X2, Y2
    violations = validate(ESETStructure("noncommuting", 2, 2, 2, rho, [1.0, 1.0]))
    assert any(v.startswith("commutativity") for v in violations)


def test_repeated_generator_is_not_injective():
    block = np.zeros((4, 4))
    block[0, 2] = block[2, 0] = 1.0
    violations = validate(ESETStructure("repeated", 2, 2, 2, [block, block], [1.0, 1.0]))
    assert any(v.startswith("injectivity") for v in violations)
    assert any(v.startswith("nondegeneracy") for v in violations)


def test_dimension_mismatch():
    rho = np.zeros((1, 3, 3))
    rho[0, 0, 1] = rho[0, 1, 0] = 1.0
    violations = validate(ESETStructure("mismatch", 1, 1, 2, rho, [1.0]))
    assert any(v.startswith("dimension mismatch") for v in violations)


@pytest.mark.parametrize("raw, field", [
    ({"n_a": 1, "n_k": 1, "n_l": 1, "rho": [[0, 1], [1, 0]], "xi": [1]}, "rho"),
    ({"n_a": 1, "n_k": 1, "n_l": 1, "rho": [[[0, 1], [1, 0]]], "xi": [1, 2]}, "xi"),
    ({"n_a": 0, "n_k": 1, "n_l": 1, "rho": [], "xi": [1]}, "n_a"),
    ({"n_k": 1, "n_l": 1, "rho": [[[0, 1], [1, 0]]], "xi": [1]}, "n_a"),
])
def test_shape_errors(raw, field):
    with pytest.raises(StructureShapeError) as info:
        ESETStructure.from_dict(raw)
    assert info.value.field == field


def test_load_errors(tmp_path, write_structure):
    with pytest.raises(StructureLoadError):
        load_structure(str(tmp_path / "missing.json"))
    with pytest.raises(StructureLoadError):
        load_structure(write_structure("{not json"))
    with pytest.raises(StructureLoadError):
        load_structure(write_structure("[1, 2, 3]"))


def test_save_and_load(tmp_path, skewed_4d):
    path = str(tmp_path / "skewed.json")
    save_structure(skewed_4d, path)
    loaded = load_structure(path)
    assert loaded.name == "skewed-4d"
    np.testing.assert_array_equal(loaded.rho, skewed_4d.rho)
    np.testing.assert_array_equal(loaded.xi, skewed_4d.xi)


def test_rho_apply_and_omega(example):
    image = rho_apply(example, [2.0], [1.0, 3.0])
    assert image.which == "B"
    np.testing.assert_allclose(image.coords, [6.0, 2.0])
    assert omega_pair(example, [2.0], [3.0]) == pytest.approx(-6.0)


def test_vector_tags(example):
    with pytest.raises(UnsupportedVectorError):
        AlgebraVector("Q", [1.0])
    with pytest.raises(UnsupportedVectorError):
        rho_apply(example, AlgebraVector("L", [1.0]), [1.0, 0.0])
    with pytest.raises(StructureShapeError):
        rho_apply(example, [1.0, 2.0], [1.0, 0.0])
