"""
Batched hyperbolic matrix functions.

sinh(R) and cosh(R) of stacks of square matrices, from the scaling-and-squaring
exponential for moderate norms and from the Taylor series near zero, where
(exp(R) - exp(-R))/2 would cancel.
"""
import numpy as np
from scipy.linalg import expm

from star_src.constants import SERIES_SWITCH_NORM, SERIES_TERMS


def _series(R: np.ndarray):
    eye = np.broadcast_to(np.eye(R.shape[-1]), R.shape)
    term = eye.copy()
    sinh = np.zeros_like(R)
    cosh = eye.copy()
    for k in range(1, SERIES_TERMS + 1):
        term = term @ R / k
        if k % 2:
            sinh = sinh + term
        else:
            cosh = cosh + term
    return sinh, cosh


def sinh_cosh(R: np.ndarray):
    """
    Return (sinh(R), cosh(R)) for R of shape (..., n, n).

    Args:
        R: real matrices, any leading batch shape.

    Returns:
        tuple of arrays with the shape of R.
    """
    R = np.asarray(R, dtype=float)
    batch = R.shape[:-2]
    n = R.shape[-1]
    flat = R.reshape((-1, n, n))
    sinh = np.empty_like(flat)
    cosh = np.empty_like(flat)

    norms = np.abs(flat).sum(axis=-2).max(axis=-1) if flat.size else np.zeros(0)
    small = norms <= SERIES_SWITCH_NORM
    if small.any():
        sinh[small], cosh[small] = _series(flat[small])
    large = ~small
    if large.any():
        plus = expm(flat[large])
        minus = expm(-flat[large])
        sinh[large] = 0.5 * (plus - minus)
        cosh[large] = 0.5 * (plus + minus)
    return sinh.reshape(batch + (n, n)), cosh.reshape(batch + (n, n))


def exp_matrix(R: np.ndarray) -> np.ndarray:
    """exp(R) for R of shape (..., n, n)."""
    return expm(np.asarray(R, dtype=float))
