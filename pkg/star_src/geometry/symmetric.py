"""
Symmetries, midpoints and the transvection group of an elementary solvable
symmetric space, in the global Darboux chart M = a x L.
"""
import numpy as np

from star_src.algebra.eset import ESETStructure, rho_matrix
from star_src.algebra.matfuncs import exp_matrix, sinh_cosh
from star_src.algebra.twist import cosh_ll
from star_src.constants import GEOMETRY_LOG_FILENAME
from star_src.exception import MidpointDomainError
from star_src.geometry.points import GroupElement, Point
from star_src.logger import get_logger

logger = get_logger(__name__, log_filename=GEOMETRY_LOG_FILENAME)


def _matvec(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum("...ij,...j->...i", M, v)


def origin(e: ESETStructure) -> Point:
    return Point(np.zeros(e.n_a), np.zeros(e.n_l))


def symmetry(e: ESETStructure, x: Point, y: Point) -> Point:
    """s_x(y) = (2a - a', 2 cosh(a - a')|_L l - l') for x = (a, l), y = (a', l')."""
    C = cosh_ll(e, x.a - y.a)
    return Point(2.0 * x.a - y.a, 2.0 * _matvec(C, x.l) - y.l)


def midpoint(e: ESETStructure, x: Point) -> Point:
    """
    The point m with s_m(origin) = x: m = (a/2, cosh(a/2)|_L^{-1} l / 2).

    Raises:
        MidpointDomainError: cosh(a/2)|_L is singular.
    """
    C = cosh_ll(e, 0.5 * x.a)
    cond = np.linalg.cond(C)
    if not np.all(np.isfinite(cond)) or np.any(cond > 1e14):
        raise MidpointDomainError(x.a)
    return Point(0.5 * x.a, 0.5 * np.linalg.solve(C, x.l[..., None])[..., 0])


def group_mul(e: ESETStructure, g: GroupElement, h: GroupElement) -> GroupElement:
    """(a, b)(a', b') = (a + a', exp(rho(a)) b' + b)."""
    b = _matvec(exp_matrix(rho_matrix(e, g.a)), h.b) + g.b
    return GroupElement(g.a + h.a, b[..., :e.n_k], b[..., e.n_k:])


def group_inv(e: ESETStructure, g: GroupElement) -> GroupElement:
    b = -_matvec(exp_matrix(rho_matrix(e, -g.a)), g.b)
    return GroupElement(-g.a, b[..., :e.n_k], b[..., e.n_k:])


def transvection_shift(e: ESETStructure, g: GroupElement, a: np.ndarray) -> np.ndarray:
    """cosh(a)|_L lambda - sinh(a)|_{L<-k} kappa, the l-offset of g at base coordinate a."""
    sinh, cosh = sinh_cosh(rho_matrix(e, a))
    n_k = e.n_k
    return _matvec(cosh[..., n_k:, n_k:], g.l) - _matvec(sinh[..., n_k:, :n_k], g.k)


def group_act(e: ESETStructure, g: GroupElement, x: Point) -> Point:
    """(alpha, kappa, lambda)(a, l) = (a + alpha, cosh(a + alpha) lambda - sinh(a + alpha) kappa + l)."""
    a = x.a + g.a
    return Point(a, transvection_shift(e, g, a) + x.l)


def project_pi(e: ESETStructure, g: GroupElement) -> Point:
    """pi(a, k, l) = (a, -sinh(a) k + cosh(a) l)."""
    sinh, cosh = sinh_cosh(rho_matrix(e, g.a))
    n_k = e.n_k
    l = -_matvec(sinh[..., n_k:, :n_k], g.k) + _matvec(cosh[..., n_k:, n_k:], g.l)
    return Point(g.a, l)


def section_gamma(e: ESETStructure, x: Point) -> GroupElement:
    """gamma(a, l) = (a, sinh(a) l, cosh(a) l)."""
    sinh, cosh = sinh_cosh(rho_matrix(e, x.a))
    n_k = e.n_k
    return GroupElement(x.a, _matvec(sinh[..., :n_k, n_k:], x.l), _matvec(cosh[..., n_k:, n_k:], x.l))
