"""
Exact transport of grid functions by the transvection group and by symmetries.

Every move is a per-slice translation, carried out spectrally, so band-limited
data is moved without interpolation error; content leaving the box wraps
around and must be negligible.
"""
import numpy as np
from scipy import fft as sp_fft

from star_src.algebra.eset import ESETStructure
from star_src.algebra.twist import cosh_ll
from star_src.exception import GridError
from star_src.geometry.points import GroupElement, Point
from star_src.geometry.symmetric import transvection_shift
from star_src.transform.fourier import angular_frequencies
from star_src.transform.grid import PhaseSpaceGrid


def _phase(g: PhaseSpaceGrid, axes, shift: np.ndarray) -> np.ndarray:
    """exp(-i k . shift) over `axes`; shift broadcasts against the remaining leading axes."""
    total = 0.0
    for d, axis in enumerate(axes):
        k = angular_frequencies(g.counts[axis], g.steps[axis])
        shape = [1] * g.ndim
        shape[axis] = -1
        total = total + np.reshape(k, shape) * shift[..., d]
    return np.exp(-1j * total)


def translate_a(g: PhaseSpaceGrid, alpha: np.ndarray) -> PhaseSpaceGrid:
    """u(a - alpha, l)."""
    alpha = np.asarray(alpha, dtype=float)
    axes = g.a_axes
    spectrum = sp_fft.fftn(g.data, axes=axes)
    spectrum *= _phase(g, axes, alpha.reshape((1,) * g.ndim + (-1,)))
    return g.with_data(sp_fft.ifftn(spectrum, axes=axes))


def shear_l(g: PhaseSpaceGrid, offsets: np.ndarray) -> PhaseSpaceGrid:
    """u(a, l - c(a)) for offsets c of shape (*a_shape, n_l)."""
    offsets = np.asarray(offsets, dtype=float).reshape(g.a_shape + (1,) * g.n_l + (g.n_l,))
    axes = g.l_axes
    spectrum = sp_fft.fftn(g.data, axes=axes)
    spectrum *= _phase(g, axes, offsets)
    return g.with_data(sp_fft.ifftn(spectrum, axes=axes))


def reflect(g: PhaseSpaceGrid) -> PhaseSpaceGrid:
    """u(-a, -l) on a grid centred on every axis."""
    if not g.is_centered(range(g.ndim)):
        raise GridError("Reflection requires a grid centred on every axis.")
    data = g.data
    for axis in range(g.ndim):
        data = np.roll(np.flip(data, axis=axis), 1, axis=axis)
    return g.with_data(data)


def _a_values(g: PhaseSpaceGrid) -> np.ndarray:
    return g.a_points().reshape(g.a_shape + (g.n_a,))


def act_on_grid(e: ESETStructure, elem: GroupElement, g: PhaseSpaceGrid) -> PhaseSpaceGrid:
    """(elem . u)(x) = u(elem^{-1} x) = u(a - alpha, l - c(a)), c(a) = cosh(a) lambda - sinh(a) kappa."""
    if g.dual:
        raise GridError("Group action is defined on primal grids only.")
    offsets = transvection_shift(e, elem, _a_values(g) + elem.a)
    return translate_a(shear_l(g, offsets), elem.a)


def symmetry_pullback(e: ESETStructure, x: Point, g: PhaseSpaceGrid) -> PhaseSpaceGrid:
    """(u o s_x)(a', l') = u(2a - a', 2 cosh(a - a') l - l')."""
    if g.dual:
        raise GridError("Symmetry pullback is defined on primal grids only.")
    offsets = 2.0 * np.einsum("...ij,j->...i", cosh_ll(e, _a_values(g) + x.a), x.l)
    return translate_a(shear_l(reflect(g), offsets), 2.0 * x.a)
