"""
Partial Fourier transform along the l-axes.

F u(a, kappa) = int_L e^{-i kappa . l} u(a, l) dl, discretised on centred grids
so that both the primal and the dual axes keep index M/2 at the origin.
The dual axes are stored in kappa coordinates with step 2 pi / (M h).
"""
import numpy as np
from scipy import fft as sp_fft

from star_src.exception import DualFlagError, GridError
from star_src.transform.grid import PhaseSpaceGrid


def plancherel_constant(n_l: int) -> float:
    """c with ||F u||_{dkappa} = c ||u||_{dl} for the discrete transform below."""
    return float((2.0 * np.pi) ** (0.5 * n_l))


def _require_centered(g: PhaseSpaceGrid) -> None:
    if not g.is_centered(g.l_axes):
        raise GridError(f"Partial Fourier transforms require centred l-axes, got mins {g.mins[g.n_a:]}.")


def partial_fourier(g: PhaseSpaceGrid) -> PhaseSpaceGrid:
    if g.dual:
        raise DualFlagError(expected_dual=False)
    _require_centered(g)
    axes = g.l_axes
    spacing = float(np.prod(g.steps[g.n_a:]))
    data = spacing * sp_fft.fftshift(sp_fft.fftn(sp_fft.ifftshift(g.data, axes=axes), axes=axes), axes=axes)
    dual_steps = tuple(2.0 * np.pi / (m * h) for m, h in zip(g.l_shape, g.steps[g.n_a:]))
    dual_mins = tuple(-0.5 * m * s for m, s in zip(g.l_shape, dual_steps))
    return g.with_data(data, dual=True,
                       mins=g.mins[:g.n_a] + dual_mins,
                       steps=g.steps[:g.n_a] + dual_steps)


def partial_fourier_inv(g: PhaseSpaceGrid) -> PhaseSpaceGrid:
    if not g.dual:
        raise DualFlagError(expected_dual=True)
    _require_centered(g)
    axes = g.l_axes
    primal_steps = tuple(2.0 * np.pi / (m * s) for m, s in zip(g.l_shape, g.steps[g.n_a:]))
    spacing = float(np.prod(primal_steps))
    data = sp_fft.fftshift(sp_fft.ifftn(sp_fft.ifftshift(g.data, axes=axes), axes=axes), axes=axes) / spacing
    primal_mins = tuple(-0.5 * m * h for m, h in zip(g.l_shape, primal_steps))
    return g.with_data(data, dual=False,
                       mins=g.mins[:g.n_a] + primal_mins,
                       steps=g.steps[:g.n_a] + primal_steps)


def angular_frequencies(count: int, step: float) -> np.ndarray:
    """Angular frequencies of an axis in FFT order."""
    return 2.0 * np.pi * sp_fft.fftfreq(count, d=step)
