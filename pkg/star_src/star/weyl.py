"""
Weyl's product on P = a x L with the chart symplectic form
omega0(x, y) = a_x^T B l_y - a_y^T B l_x:

    (u *0 v)(x) = (pi hbar)^{-2n} int int e^{-(2i/hbar) S0(x, y, z)} u(y) v(z) dmu(y) dmu(z),

dmu = |det B| da dl. `weyl_product_quad` is the direct quadrature (oracle,
small grids); `weyl_product_fft` evaluates the same operator as a twisted
convolution.
"""
from typing import Callable, Optional

import numpy as np
from scipy import fft as sp_fft

from star_src.constants import KERNEL_CHUNK, PRODUCT_LOG_FILENAME
from star_src.exception import GridError
from star_src.logger import get_logger
from star_src.transform.fourier import angular_frequencies
from star_src.transform.grid import PhaseSpaceGrid

logger = get_logger(__name__, log_filename=PRODUCT_LOG_FILENAME)


def _pairing(g: PhaseSpaceGrid, pairing: Optional[np.ndarray]) -> np.ndarray:
    if g.n_a != g.n_l:
        raise GridError(f"Products need dim a = dim L, got {g.n_a} and {g.n_l}.")
    return np.eye(g.n_a) if pairing is None else np.asarray(pairing, dtype=float)


def weyl_constant(n: int, hbar: float) -> float:
    return float((np.pi * hbar) ** (-2 * n))


def _require_operands(u: PhaseSpaceGrid, v: PhaseSpaceGrid) -> None:
    u.require_match(v)
    if u.dual:
        raise GridError("Products act on primal grids.")


def weyl_product_fft(u: PhaseSpaceGrid, v: PhaseSpaceGrid, hbar: float,
                     pairing: Optional[np.ndarray] = None) -> PhaseSpaceGrid:
    """
    Twisted convolution in the mixed representation (a-frequency, kappa).

    Plane waves multiply as e_{k,kappa} *0 e_{k',kappa'} =
    exp(i(Q(k).kappa' - Q(k').kappa)) e_{k+k',kappa+kappa'} with
    Q(k) = (hbar/2) B^{-1} k. The kappa-convolution is carried out explicitly
    (linear, no wrap-around); each a-frequency phase is a spectral shift, so the
    a-convolution reduces to a pointwise product in a.
    """
    _require_operands(u, v)
    B = _pairing(u, pairing)
    n = u.n_a
    a_axes, l_axes = u.a_axes, u.l_axes
    l_shape = u.l_shape
    n_l_points = int(np.prod(l_shape))
    h_l = u.steps[n:]
    logger.debug("weyl_product_fft: counts=%s hbar=%g", u.counts, hbar)

    spacing_l = float(np.prod(h_l))

    def spectrum(g: PhaseSpaceGrid) -> np.ndarray:
        tilde = spacing_l * sp_fft.fftn(sp_fft.ifftshift(g.data, axes=l_axes), axes=l_axes)
        full = sp_fft.fftn(tilde, axes=a_axes)
        return full.reshape(u.a_shape + (n_l_points,))

    U_hat = spectrum(u)
    V_hat = spectrum(v)

    # a-frequencies (*a_shape, n) and integer kappa indices (N_l, n), FFT order
    k_a = np.stack(np.meshgrid(*[angular_frequencies(u.counts[i], u.steps[i]) for i in a_axes],
                               indexing="ij"), axis=-1)
    index = np.stack(np.meshgrid(*[np.rint(sp_fft.fftfreq(m) * m).astype(int) for m in l_shape],
                                 indexing="ij"), axis=-1).reshape(-1, n)
    dkappa = np.array([2.0 * np.pi / (m * h) for m, h in zip(l_shape, h_l)])
    kappa = index * dkappa

    Q = (0.5 * hbar) * k_a @ np.linalg.inv(B).T
    P = np.exp(-1j * Q @ kappa.T)
    UP = U_hat * P

    half = np.asarray(l_shape) // 2
    W = np.empty(u.a_shape + (n_l_points,), dtype=np.complex128)
    for J in range(n_l_points):
        diff = index[J] - index
        valid = np.all((diff >= -half) & (diff < half), axis=-1)
        flat = np.ravel_multi_index(tuple((diff % np.asarray(l_shape)).T), l_shape)
        shifted = np.exp(1j * Q @ kappa[J])[..., None]
        Us = sp_fft.ifftn(UP * shifted, axes=a_axes)
        Vs = sp_fft.ifftn(np.where(valid, V_hat[..., flat], 0.0) * P, axes=a_axes)
        W[..., J] = np.sum(Us * Vs, axis=-1)
    W /= float(np.prod([m * h for m, h in zip(l_shape, h_l)]))

    W = W.reshape(u.a_shape + l_shape)
    data = sp_fft.fftshift(sp_fft.ifftn(W, axes=l_axes), axes=l_axes) / spacing_l
    return u.with_data(data, hbar=hbar)


def _difference_lattice(g: PhaseSpaceGrid):
    """Index differences of the a-grid: lattice (K, n) and a map (i, j) -> row of a_i - a_j."""
    a_shape = g.a_shape
    side = tuple(2 * m - 1 for m in a_shape)
    offsets = np.stack(np.meshgrid(*[np.arange(s) - (m - 1) for s, m in zip(side, a_shape)],
                                   indexing="ij"), axis=-1).reshape(-1, g.n_a)
    cells = np.stack(np.unravel_index(np.arange(int(np.prod(a_shape))), a_shape), axis=-1)
    pair = cells[:, None, :] - cells[None, :, :] + (np.asarray(a_shape) - 1)
    rows = np.ravel_multi_index(tuple(np.moveaxis(pair, -1, 0)), side)
    return offsets * np.asarray(g.steps[:g.n_a]), rows


def kernel_quadrature(u: PhaseSpaceGrid, v: PhaseSpaceGrid, hbar: float, B: np.ndarray,
                      z_of: Callable[[np.ndarray], np.ndarray],
                      amplitude_of: Callable[[np.ndarray], np.ndarray]) -> PhaseSpaceGrid:
    """
    Trapezoidal quadrature of
    (pi hbar)^{-2n} int int e^{(2i/hbar) S(x, x1, x2)} A(a2 - a1) u(x1) v(x2) dmu dmu
    for a phase S(x1, x2, x3) = cyclic sum of z(a1 - a2) . l3.

    The l-integrals are done first as discrete Fourier sums, leaving a triple
    sum over the a-grid. l-frequencies (2/hbar) z beyond the grid Nyquist band
    are dropped.
    """
    _require_operands(u, v)
    n = u.n_a
    n_a_points = int(np.prod(u.a_shape))
    n_l_points = int(np.prod(u.l_shape))
    h_a = float(np.prod(u.steps[:n]))
    h_l = float(np.prod(u.steps[n:]))
    logger.debug("kernel_quadrature: counts=%s hbar=%g", u.counts, hbar)

    differences, rows = _difference_lattice(u)
    z_diff = np.asarray(z_of(differences), dtype=float)
    amplitude = np.asarray(amplitude_of(differences), dtype=float)
    l_points = u.l_points()

    exponent = (2.0 / hbar) * z_diff
    E_full = np.exp(1j * exponent @ l_points.T)
    nyquist = np.pi / np.asarray(u.steps[n:])
    aliased = np.any(np.abs(exponent) > nyquist, axis=-1)
    E_masked = np.where(aliased[:, None], 0.0, E_full)

    u_flat = u.data.reshape(n_a_points, n_l_points)
    v_flat = v.data.reshape(n_a_points, n_l_points)
    U = (u_flat @ E_masked.T) * h_l
    V = (v_flat @ E_masked.T) * h_l

    outer = E_full[rows].reshape(n_a_points * n_a_points, n_l_points)
    scale = weyl_constant(n, hbar) * float(np.linalg.det(B)) ** 2 * h_a ** 2
    J = np.arange(n_a_points)[None, :, None]
    K = np.arange(n_a_points)[None, None, :]
    weight = amplitude[rows[K[0], J[0]]]

    out = np.empty((n_a_points, n_l_points), dtype=np.complex128)
    for start in range(0, n_a_points, KERNEL_CHUNK):
        I = np.arange(start, min(start + KERNEL_CHUNK, n_a_points))[:, None, None]
        T = U[J, rows[K, I]] * V[K, rows[I, J]] * weight
        out[I[:, 0, 0]] = scale * (T.reshape(len(I), -1) @ outer)
    return u.with_data(out.reshape(u.counts), hbar=hbar)


def weyl_product_quad(u: PhaseSpaceGrid, v: PhaseSpaceGrid, hbar: float,
                      pairing: Optional[np.ndarray] = None) -> PhaseSpaceGrid:
    B = _pairing(u, pairing)
    return kernel_quadrature(u, v, hbar, B,
                             z_of=lambda d: d @ B,
                             amplitude_of=lambda d: np.ones(d.shape[0]))
