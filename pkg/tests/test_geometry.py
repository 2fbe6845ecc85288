import numpy as np
import pytest

from star_src.exception import (BarycenterError, MidpointDomainError, SkewMatrixError,
                                UnsupportedVectorError)
from star_src.geometry import (GroupElement, Point, admissibility_residuals, barycenter,
                               chart_form, chart_poisson, flat_phase_S0, group_act, group_inv,
                               group_mul, hamiltonian, hamiltonian_gradient,
                               kernel_identity_residual, midpoint, origin, phase_S, project_pi,
                               section_gamma, standard_form, symmetry, two_point_u,
                               weyl_triple_residuals)


def _points(e, rng, count, box=1.0):
    return Point(rng.uniform(-box, box, size=(count, e.n_a)), rng.uniform(-box, box, size=(count, e.n_l)))


def _elements(e, rng, count, box=1.0):
    return GroupElement(rng.uniform(-box, box, size=(count, e.n_a)),
                        rng.uniform(-box, box, size=(count, e.n_k)),
                        rng.uniform(-box, box, size=(count, e.n_l)))


def test_example_symmetry_closed_form(example):
    x, y = Point([0.7], [1.2]), Point([-0.4], [0.3])
    s = symmetry(example, x, y)
    np.testing.assert_allclose(s.a, [1.8])
    np.testing.assert_allclose(s.l, [2.0 * np.cosh(1.1) * 1.2 - 0.3])


@pytest.mark.parametrize("name", ["example", "product_4d", "skewed_4d"])
def test_symmetric_space_axioms(request, name):
    e = request.getfixturevalue(name)
    rng = np.random.default_rng(11)
    x, y, z = (_points(e, rng, 100) for _ in range(3))
    assert symmetry(e, x, symmetry(e, x, y)).allclose(y)
    assert symmetry(e, x, x).allclose(x)
    lhs = symmetry(e, x, symmetry(e, y, symmetry(e, x, z)))
    assert lhs.allclose(symmetry(e, symmetry(e, x, y), z), atol=1e-9)


@pytest.mark.parametrize("name", ["example", "skewed_4d"])
def test_midpoint(request, name):
    e = request.getfixturevalue(name)
    x = _points(e, np.random.default_rng(2), 50)
    m = midpoint(e, x)
    assert symmetry(e, m, origin(e)).allclose(x)


def test_midpoint_domain(monkeypatch, example):
    monkeypatch.setattr("star_src.geometry.symmetric.cosh_ll", lambda e, a: np.zeros(a.shape + (1,)))
    with pytest.raises(MidpointDomainError):
        midpoint(example, Point([1.0], [1.0]))


@pytest.mark.parametrize("name", ["example", "skewed_4d"])
def test_group_axioms(request, name):
    e = request.getfixturevalue(name)
    rng = np.random.default_rng(4)
    g, h, k = (_elements(e, rng, 30) for _ in range(3))
    left = group_mul(e, group_mul(e, g, h), k).as_array()
    right = group_mul(e, g, group_mul(e, h, k)).as_array()
    np.testing.assert_allclose(left, right, atol=1e-10)
    np.testing.assert_allclose(group_mul(e, g, group_inv(e, g)).as_array(), 0.0, atol=1e-10)
    x = _points(e, rng, 30)
    assert group_act(e, group_mul(e, g, h), x).allclose(group_act(e, g, group_act(e, h, x)), atol=1e-9)
    identity = GroupElement.identity(e.n_a, e.n_k, e.n_l)
    assert group_act(e, identity, x).allclose(x)
    assert project_pi(e, section_gamma(e, x)).allclose(x)


@pytest.mark.parametrize("name", ["example", "skewed_4d"])
def test_group_commutes_with_symmetries(request, name):
    e = request.getfixturevalue(name)
    rng = np.random.default_rng(8)
    g = _elements(e, rng, 20)
    x, y = _points(e, rng, 20), _points(e, rng, 20)
    lhs = group_act(e, g, symmetry(e, x, y))
    rhs = symmetry(e, group_act(e, g, x), group_act(e, g, y))
    assert lhs.allclose(rhs, atol=1e-9)


def test_example_phase_value(example):
    x1, x2, x3 = Point([0.0], [0.0]), Point([1.0], [0.0]), Point([0.0], [1.0])
    assert phase_S(example, x1, x2, x3) == pytest.approx(-np.sinh(1.0), rel=1e-13)
    assert phase_S(example, x2, x2, x3) == 0.0


@pytest.mark.parametrize("name", ["example", "product_4d", "skewed_4d"])
def test_phase_admissibility(request, name):
    e = request.getfixturevalue(name)
    rng = np.random.default_rng(12)
    x, y, z, m = (_points(e, rng, 200) for _ in range(4))
    residuals = admissibility_residuals(e, x, y, z, m)
    assert set(residuals) == {"cyclic", "antisymmetry", "symmetry_invariance", "reflection", "two_point"}
    assert max(residuals.values()) < 1e-10


def test_phase_from_origin(example):
    x, y = Point([0.3], [-1.0]), Point([-0.8], [0.5])
    assert phase_S(example, origin(example), x, y) == pytest.approx(two_point_u(example, x, y))


def test_phase_group_invariance(skewed_4d):
    rng = np.random.default_rng(21)
    g = _elements(skewed_4d, rng, 40, box=0.5)
    x1, x2, x3 = (_points(skewed_4d, rng, 40, box=0.8) for _ in range(3))
    moved = phase_S(skewed_4d, *(group_act(skewed_4d, g, x) for x in (x1, x2, x3)))
    np.testing.assert_allclose(moved, phase_S(skewed_4d, x1, x2, x3), atol=1e-9)


def test_flat_phase(example):
    J = chart_form(example)
    np.testing.assert_array_equal(J, standard_form(1))
    rng = np.random.default_rng(1)
    x, y, z, m = (rng.uniform(-2, 2, size=(100, 2)) for _ in range(4))
    assert max(weyl_triple_residuals(x, y, z, m, J).values()) < 1e-12
    assert flat_phase_S0([0, 0], [1, 0], [0, 1]) == pytest.approx(1.0)
    with pytest.raises(SkewMatrixError):
        flat_phase_S0(x, y, z, np.eye(2))


def test_barycenter_kernel_identity():
    J = standard_form(1)
    S = lambda x, y, z: flat_phase_S0(x, y, z, J)
    rng = np.random.default_rng(9)
    for _ in range(20):
        a, b, c, d = (rng.uniform(-2, 2, size=2) for _ in range(4))
        g = barycenter(S, a, b, c, d)
        t = rng.uniform(-2, 2, size=(50, 2))
        assert kernel_identity_residual(S, a, b, c, d, g, t) < 1e-10


def test_barycenter_degenerate_segment():
    S = lambda x, y, z: flat_phase_S0(x, y, z)
    a = np.array([0.5, -0.5])
    np.testing.assert_array_equal(barycenter(S, a, [1.0, 0.0], a, [0.0, 1.0]), a)


def test_barycenter_without_sign_change():
    S = lambda x, y, z: float(np.sum(x) * np.sum(y) * np.sum(z))
    with pytest.raises(BarycenterError):
        barycenter(S, [1.0], [0.0], [2.0], [1.0])


def test_hamiltonian_example(example):
    X = np.array([0.5, 0.0, -2.0])
    x = Point([0.7], [1.5])
    assert hamiltonian(example, X, x) == pytest.approx(0.5 * 1.5 + 2.0 * np.sinh(0.7))
    assert hamiltonian(example, X, origin(example)) == 0.0
    with pytest.raises(UnsupportedVectorError):
        hamiltonian(example, [0.5, 1.0, -2.0], x)


def test_hamiltonian_gradient(skewed_4d):
    X = np.array([0.3, -0.7, 0.0, 0.0, 1.1, 0.4])
    base = np.array([0.2, -0.4, 0.9, -1.3])
    grad_a, grad_l = hamiltonian_gradient(skewed_4d, X, Point(base[:2], base[2:]))
    h = 1e-6
    numeric = np.array([(hamiltonian(skewed_4d, X, Point.from_array(base + h * d, 2))
                         - hamiltonian(skewed_4d, X, Point.from_array(base - h * d, 2))) / (2 * h)
                        for d in np.eye(4)])
    np.testing.assert_allclose(np.concatenate([grad_a, grad_l]), numeric, rtol=1e-7, atol=1e-8)


def test_chart_poisson_of_coordinates(example):
    assert chart_poisson(example, (np.array([1.0]), np.array([0.0])), (np.array([0.0]), np.array([1.0]))) == 1.0
    assert chart_poisson(example, (np.array([0.0]), np.array([1.0])), (np.array([1.0]), np.array([0.0]))) == -1.0
