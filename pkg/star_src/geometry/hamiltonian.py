"""
Hamiltonian functions lambda_X of elements X = X_a + X_L of P.

lambda_X(a, l) = X_a^T B l - z(a) . X_L, affine in l and sinh-type in a,
vanishing at the origin.
"""
from typing import Tuple

import numpy as np

from star_src.algebra.eset import AlgebraVector, ESETStructure, pairing_matrix
from star_src.algebra.twist import cosh_ll, z_map
from star_src.exception import UnsupportedVectorError
from star_src.geometry.points import Point


def split_p_vector(e: ESETStructure, X) -> Tuple[np.ndarray, np.ndarray]:
    """Return (X_a, X_L) from a G-full vector, rejecting nonzero k-parts."""
    coords = X.check(e) if isinstance(X, AlgebraVector) else np.asarray(X, dtype=float)
    if coords.shape != (e.dim("G"),):
        raise UnsupportedVectorError(f"Expected a G-vector of length {e.dim('G')}, got shape {coords.shape}.")
    k_part = coords[e.n_a:e.n_a + e.n_k]
    if np.any(k_part != 0):
        raise UnsupportedVectorError("Hamiltonians are only defined for X in P (zero k-part).")
    return coords[:e.n_a], coords[e.n_a + e.n_k:]


def hamiltonian(e: ESETStructure, X, x: Point):
    X_a, X_l = split_p_vector(e, X)
    B = pairing_matrix(e)
    value = np.einsum("i,ij,...j->...", X_a, B, x.l) - np.einsum("...j,j->...", z_map(e, x.a), X_l)
    return float(value) if np.ndim(value) == 0 else value


def hamiltonian_gradient(e: ESETStructure, X, x: Point) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form (d_a lambda_X, d_l lambda_X) at x."""
    X_a, X_l = split_p_vector(e, X)
    B = pairing_matrix(e)
    grad_l = np.broadcast_to(X_a @ B, x.l.shape)
    grad_a = -np.einsum("ij,...jk,k->...i", B, cosh_ll(e, x.a), X_l)
    return grad_a, grad_l


def chart_poisson(e: ESETStructure, grad_f: Tuple[np.ndarray, np.ndarray],
                  grad_g: Tuple[np.ndarray, np.ndarray]):
    """{f, g} = d_a f^T B^{-T} d_l g - d_l f^T B^{-1} d_a g."""
    B_inv = np.linalg.inv(pairing_matrix(e))
    fa, fl = grad_f
    ga, gl = grad_g
    value = (np.einsum("...i,ji,...j->...", fa, B_inv, gl)
             - np.einsum("...i,ij,...j->...", fl, B_inv, ga))
    return float(value) if np.ndim(value) == 0 else value
