"""
Intertwiners between the Weyl product and the deformed product.

T_hbar = F^{-1} o phi_hbar^* o F and tau_hbar = F^{-1} o (phi_hbar^{-1})^* o F,
where phi_hbar^* pulls a dual function back along
chi_hbar(kappa) = (2/hbar) B^{-T} z((hbar/2) B^{-T} kappa) on L*. With the
flat override the twist is the identity and both maps reduce to copies.
"""
import numpy as np

from star_src.algebra.eset import ESETStructure, pairing_matrix
from star_src.algebra.twist import twist_inverse, z_map
from star_src.constants import DEFAULT_INTERPOLATION, TRANSFORM_LOG_FILENAME
from star_src.exception import DualFlagError, GridError
from star_src.logger import get_logger
from star_src.transform.fourier import partial_fourier, partial_fourier_inv
from star_src.transform.grid import PhaseSpaceGrid
from star_src.transform.resample import resample

logger = get_logger(__name__, log_filename=TRANSFORM_LOG_FILENAME)


def chi(e: ESETStructure, kappa: np.ndarray, hbar: float, inverse: bool = False) -> np.ndarray:
    """The dual-side twist chi_hbar (or its inverse) on rows kappa of shape (P, n)."""
    B = pairing_matrix(e)
    scaled = (0.5 * hbar) * kappa @ np.linalg.inv(B)
    if inverse:
        return (2.0 / hbar) * twist_inverse(e, scaled) @ B
    return (2.0 / hbar) * z_map(e, scaled)


def _resample_l(g: PhaseSpaceGrid, targets: np.ndarray, interpolation: str) -> np.ndarray:
    values = resample(g.data, g.mins[g.n_a:], g.steps[g.n_a:], targets, interpolation)
    return values.reshape(g.counts)


def dilate(g: PhaseSpaceGrid, lam: float, interpolation: str = DEFAULT_INTERPOLATION) -> PhaseSpaceGrid:
    """(d_lam u)(a, l) = u(a, lam l) along the trailing axes of a primal or dual grid."""
    if lam == 0:
        raise GridError("Dilation factor must be nonzero.")
    if lam == 1:
        return g.with_data(g.data.copy())
    return g.with_data(_resample_l(g, lam * g.l_points(), interpolation))


def drop_nyquist(g: PhaseSpaceGrid) -> PhaseSpaceGrid:
    """Zero the unpaired kappa = -N/2 slice of every even dual l-axis."""
    data = g.data.copy()
    for axis, count in zip(g.l_axes, g.l_shape):
        if count % 2 == 0:
            index = [slice(None)] * g.ndim
            index[axis] = 0
            data[tuple(index)] = 0.0
    return g.with_data(data)


def pullback_phi(e: ESETStructure, g: PhaseSpaceGrid, hbar: float, inverse: bool = False,
                 flat: bool = False, interpolation: str = DEFAULT_INTERPOLATION) -> PhaseSpaceGrid:
    """
    Pull a dual-grid function back along chi_hbar (or chi_hbar^{-1}).

    Raises:
        DualFlagError: g is not a dual grid.
    """
    if not g.dual:
        raise DualFlagError(expected_dual=True)
    if flat or hbar == 0:
        return g.with_data(g.data.copy())
    targets = chi(e, g.l_points(), hbar, inverse=inverse)
    # the readable band is symmetric under kappa -> -kappa, so conj(T u) = T(conj u)
    limit = np.abs(np.asarray(g.mins[g.n_a:])) - np.asarray(g.steps[g.n_a:])
    outside = np.any(np.abs(targets) > limit, axis=-1)
    if outside.any():
        logger.debug("pullback: %d of %d targets fall outside the dual box and read as zero",
                     int(outside.sum()), outside.size)
    values = _resample_l(drop_nyquist(g), targets, interpolation)
    values = np.where(outside.reshape(g.l_shape), 0.0, values)
    return drop_nyquist(g.with_data(values))


def T_hbar(e: ESETStructure, g: PhaseSpaceGrid, hbar: float, flat: bool = False,
           interpolation: str = DEFAULT_INTERPOLATION) -> PhaseSpaceGrid:
    if g.dual:
        raise DualFlagError(expected_dual=False)
    if flat or hbar == 0:
        return g.with_data(g.data.copy())
    dual = pullback_phi(e, partial_fourier(g), hbar, inverse=False, interpolation=interpolation)
    return partial_fourier_inv(dual)


def tau_hbar(e: ESETStructure, g: PhaseSpaceGrid, hbar: float, flat: bool = False,
             interpolation: str = DEFAULT_INTERPOLATION) -> PhaseSpaceGrid:
    if g.dual:
        raise DualFlagError(expected_dual=False)
    if flat or hbar == 0:
        return g.with_data(g.data.copy())
    dual = pullback_phi(e, partial_fourier(g), hbar, inverse=True, interpolation=interpolation)
    return partial_fourier_inv(dual)
