"""
Two- and three-point phase functions.

The curved phase of an ESET is the cyclic sum
S(x1, x2, x3) = xi(sinh(a1 - a2) l3 + sinh(a2 - a3) l1 + sinh(a3 - a1) l2);
the flat phase S^J(x, y, z) = <x, Jy> + <y, Jz> + <z, Jx> covers the Weyl
phase S0 (J the chart symplectic form) and every Rieffel-type phase.
"""
from typing import Dict, Optional

import numpy as np

from star_src.algebra.eset import ESETStructure, pairing_matrix
from star_src.algebra.twist import z_map
from star_src.exception import SkewMatrixError
from star_src.geometry.points import Point
from star_src.geometry.symmetric import symmetry


def _dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    value = np.einsum("...i,...i->...", u, v)
    return float(value) if np.ndim(value) == 0 else value


def two_point_u(e: ESETStructure, x: Point, y: Point):
    """u(x, y) = xi(sinh(a') l - sinh(a) l') for x = (a, l), y = (a', l')."""
    return _dot(z_map(e, y.a), x.l) - _dot(z_map(e, x.a), y.l)


def phase_S(e: ESETStructure, x1: Point, x2: Point, x3: Point):
    return (_dot(z_map(e, x1.a - x2.a), x3.l)
            + _dot(z_map(e, x2.a - x3.a), x1.l)
            + _dot(z_map(e, x3.a - x1.a), x2.l))


def standard_form(n: int) -> np.ndarray:
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def chart_form(e: ESETStructure) -> np.ndarray:
    """J_B = [[0, B], [-B^T, 0]], so omega0(x, y) = a_x^T B l_y - a_y^T B l_x."""
    B = pairing_matrix(e)
    zero = np.zeros_like(B)
    return np.block([[zero, B], [-B.T, zero]])


def _check_skew(J: np.ndarray) -> np.ndarray:
    J = np.asarray(J, dtype=float)
    residual = float(np.max(np.abs(J + J.T))) if J.size else 0.0
    if J.ndim != 2 or J.shape[0] != J.shape[1] or residual > 1e-12:
        raise SkewMatrixError(residual)
    return J


def flat_phase_S0(x, y, z, J: Optional[np.ndarray] = None):
    """S^J(x, y, z) for points of R^{2n}; J defaults to the standard symplectic form."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    J = standard_form(x.shape[-1] // 2) if J is None else _check_skew(J)
    form = lambda u, v: np.einsum("...i,ij,...j->...", u, J, v)
    value = form(x, y) + form(y, z) + form(z, x)
    return float(value) if np.ndim(value) == 0 else value


def admissibility_residuals(e: ESETStructure, x: Point, y: Point, z: Point, m: Point) -> Dict[str, float]:
    """
    Residuals of the admissible-phase properties on a batch of samples,
    each scaled by 1 + |S| so large sinh magnitudes do not dominate.

    (i) cyclic invariance and antisymmetry, (ii) invariance under s_m,
    (iii) S(x, s_x(y), z) = -S(x, y, z); plus S(o, x, y) = u(x, y).
    """
    s = phase_S(e, x, y, z)
    scale = 1.0 + np.abs(s)
    cyclic = np.abs(phase_S(e, z, x, y) - s) / scale
    antisym = np.abs(phase_S(e, y, x, z) + s) / scale
    moved = phase_S(e, symmetry(e, m, x), symmetry(e, m, y), symmetry(e, m, z))
    invariance = np.abs(moved - s) / scale
    reflection = np.abs(phase_S(e, x, symmetry(e, x, y), z) + s) / scale
    o = Point(np.zeros_like(x.a), np.zeros_like(x.l))
    u = two_point_u(e, x, y)
    two_point = np.abs(phase_S(e, o, x, y) - u) / (1.0 + np.abs(u))
    return {
        "cyclic": float(np.max(cyclic)),
        "antisymmetry": float(np.max(antisym)),
        "symmetry_invariance": float(np.max(invariance)),
        "reflection": float(np.max(reflection)),
        "two_point": float(np.max(two_point)),
    }


def weyl_triple_residuals(x, y, z, m, J: Optional[np.ndarray] = None) -> Dict[str, float]:
    """
    Weyl-triple properties of the flat phase S^J with s_x(y) = 2x - y:
    (i) cyclic/antisymmetric, (ii) S(x,y,z) = S(x,y,m) + S(y,z,m) + S(z,x,m),
    (iii) S(x, s_x(y), z) = -S(x, y, z).
    """
    s = flat_phase_S0(x, y, z, J)
    scale = 1.0 + np.abs(s)
    cyclic = np.abs(flat_phase_S0(z, x, y, J) - s) + np.abs(flat_phase_S0(y, x, z, J) + s)
    cocycle = np.abs(flat_phase_S0(x, y, m, J) + flat_phase_S0(y, z, m, J)
                     + flat_phase_S0(z, x, m, J) - s)
    reflection = np.abs(flat_phase_S0(x, 2.0 * np.asarray(x) - np.asarray(y), z, J) + s)
    return {
        "cyclic": float(np.max(cyclic / scale)),
        "cocycle": float(np.max(cocycle / scale)),
        "reflection": float(np.max(reflection / scale)),
    }
