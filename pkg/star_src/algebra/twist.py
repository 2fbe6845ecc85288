"""
The twisting map phi: a -> a and its inverse.

phi is defined by xi(rho(phi(a)) f_j) = xi(sinh(a) f_j) for the L basis f_j,
i.e. phi(a) = B^{-T} z(a) with z(a)_j = xi(sinh(a) f_j). All functions accept
a single a-vector or a stack of shape (..., n_a).
"""
from typing import Dict

import numpy as np

from star_src.algebra.eset import (ESETStructure, Vector, _coords, pairing_matrix,
                                   rho_matrix)
from star_src.algebra.matfuncs import sinh_cosh
from star_src.constants import (NEWTON_MAX_ITER, NEWTON_TOLERANCE,
                                STRUCTURE_LOG_FILENAME, TWIST_BOX)
from star_src.exception import TwistDivergenceError
from star_src.logger import get_logger

logger = get_logger(__name__, log_filename=STRUCTURE_LOG_FILENAME)


def _blocks(e: ESETStructure, a: np.ndarray):
    sinh, cosh = sinh_cosh(rho_matrix(e, a))
    return sinh, cosh


def z_map(e: ESETStructure, a: Vector) -> np.ndarray:
    """z(a)_j = xi(sinh(a) f_j)."""
    sinh, _ = _blocks(e, _coords(e, a, "A"))
    return np.einsum("k,...kj->...j", e.xi, sinh[..., :e.n_k, e.n_k:])


def cosh_ll(e: ESETStructure, a: Vector) -> np.ndarray:
    """cosh(a) restricted to L, shape (..., n_l, n_l)."""
    _, cosh = _blocks(e, _coords(e, a, "A"))
    return cosh[..., e.n_k:, e.n_k:]


def twist(e: ESETStructure, a: Vector) -> np.ndarray:
    """phi(a) = B^{-T} z(a); odd, phi(0) = 0."""
    return z_map(e, a) @ np.linalg.inv(pairing_matrix(e))


def twist_jacobian_det(e: ESETStructure, a: Vector):
    value = np.linalg.det(cosh_ll(e, a))
    return float(value) if np.ndim(value) == 0 else value


def twist_derivative(e: ESETStructure, a: Vector) -> np.ndarray:
    """D phi(a) = B^{-T} C^T B^T with C = cosh(a)|_L."""
    B = pairing_matrix(e)
    C = cosh_ll(e, a)
    return np.linalg.inv(B).T @ np.swapaxes(C, -1, -2) @ B.T


def _initial_guess(a: np.ndarray) -> np.ndarray:
    norm = np.max(np.abs(a), axis=-1, keepdims=True)
    scale = np.where(norm > 1.0, np.arcsinh(norm) / np.where(norm > 1.0, norm, 1.0), 1.0)
    return a * scale


def twist_inverse(e: ESETStructure, a: Vector) -> np.ndarray:
    """
    Solve twist(x) = a by damped Newton iteration with the exact derivative.

    Args:
        e: validated structure.
        a: target value(s), shape (n_a,) or (..., n_a).

    Returns:
        x with the shape of a.

    Raises:
        TwistDivergenceError: no convergence within NEWTON_MAX_ITER iterations.
    """
    a = np.asarray(_coords(e, a, "A"), dtype=float)
    shape = a.shape
    target = a.reshape(-1, e.n_a)
    B = pairing_matrix(e)
    B_inv = np.linalg.inv(B)
    w = target @ B
    tol = NEWTON_TOLERANCE * (1.0 + np.max(np.abs(target), axis=-1))

    x = _initial_guess(target)

    def residual(x_, rows=slice(None)):
        r_ = z_map(e, x_) - w[rows]
        return r_, np.max(np.abs(r_ @ B_inv), axis=-1)

    r, err = residual(x)
    for iteration in range(NEWTON_MAX_ITER):
        active = err > tol
        if not active.any():
            break
        C = cosh_ll(e, x[active])
        y = np.linalg.solve(np.swapaxes(C, -1, -2), r[active][..., None])[..., 0]
        step = y @ B_inv
        t = np.ones(step.shape[0])
        x_act = x[active]
        err_act = err[active]
        for _ in range(30):
            trial = x_act - t[:, None] * step
            r_trial, err_trial = residual(trial, active)
            worse = err_trial > err_act
            if not worse.any():
                break
            t = np.where(worse, 0.5 * t, t)
        x[active] = trial
        r[active] = r_trial
        err[active] = err_trial

    if (err > tol).any():
        bad = int(np.argmax(err > tol))
        logger.error("twist_inverse diverged for a=%s (residual %.3e)", target[bad], err[bad])
        raise TwistDivergenceError(target[bad], NEWTON_MAX_ITER, float(err[bad]))
    return x.reshape(shape)


def sinh_identity_residual(e: ESETStructure, a: Vector) -> float:
    """max_j |xi(sinh(phi^{-1}(a)) f_j) - xi(rho(a) f_j)|."""
    a = np.asarray(_coords(e, a, "A"), dtype=float)
    lhs = z_map(e, twist_inverse(e, a))
    rhs = a @ pairing_matrix(e)
    return float(np.max(np.abs(lhs - rhs)))


def structure_diagnostics(e: ESETStructure, box: float = TWIST_BOX, samples: int = 256,
                          seed: int = 0) -> Dict[str, object]:
    """
    Orientation of the twist, positivity of its Jacobian on the box and
    hyperbolicity of rho(e_i)^2 on L.
    """
    eps = 1e-6
    probe = twist(e, eps * np.eye(e.n_a)) / eps
    orientation = int(np.sign(np.linalg.det(probe)))
    rng = np.random.default_rng(seed)
    sample = rng.uniform(-box, box, size=(samples, e.n_a))
    min_jacobian = float(np.min(twist_jacobian_det(e, sample)))
    squares = np.einsum("iab,ibc->iac", e.rho, e.rho)[:, e.n_k:, e.n_k:]
    eigenvalues = np.linalg.eigvals(squares)
    hyperbolic = bool(np.all(np.abs(eigenvalues.imag) <= 1e-12)
                      and np.all(eigenvalues.real >= -1e-12))
    return {"orientation": orientation, "min_jacobian": min_jacobian, "hyperbolic": hyperbolic}
