"""
The G-invariant deformed product *_hbar of an ESET.

Two evaluation paths: conjugation of Weyl's product by the intertwiners,
u *_hbar v = tau_hbar(T_hbar u *0 T_hbar v), and direct quadrature of the WKB
kernel with phase e^{(2i/hbar) S} and amplitude |det cosh(a2 - a1)|_L|.
"""
import numpy as np

from star_src.algebra.eset import ESETStructure, pairing_matrix, require_valid
from star_src.algebra.twist import twist_jacobian_det, z_map
from star_src.constants import PRODUCT_LOG_FILENAME
from star_src.entity.config_entity import StarParams
from star_src.logger import get_logger
from star_src.star.weyl import kernel_quadrature, weyl_product_fft, weyl_product_quad
from star_src.transform.grid import PhaseSpaceGrid
from star_src.transform.intertwiner import T_hbar, tau_hbar

logger = get_logger(__name__, log_filename=PRODUCT_LOG_FILENAME)


def star_hbar(e: ESETStructure, u: PhaseSpaceGrid, v: PhaseSpaceGrid, params: StarParams) -> PhaseSpaceGrid:
    """
    u *_hbar v on the grid of u.

    params.method selects conjugation (default), kernel or flat (twist forced
    to the identity, which is Weyl's product). The conjugation path works on
    l-axes zero padded by params.oversample and crops the result.
    """
    require_valid(e)
    u.require_match(v)
    hbar = params.hbar
    B = pairing_matrix(e)
    logger.debug("star_hbar: method=%s hbar=%g counts=%s", params.method, hbar, u.counts)
    if params.method == "flat":
        return weyl_product_fft(u, v, hbar, pairing=B)
    if params.method == "kernel":
        return star_hbar_kernel(e, u, v, params)

    factor = params.oversample
    Tu = T_hbar(e, u.pad_l(factor), hbar, interpolation=params.interpolation)
    Tv = T_hbar(e, v.pad_l(factor), hbar, interpolation=params.interpolation)
    product = weyl_product_fft(Tu, Tv, hbar, pairing=B)
    return tau_hbar(e, product, hbar, interpolation=params.interpolation).crop_l(u.l_shape)


def star_hbar_kernel(e: ESETStructure, u: PhaseSpaceGrid, v: PhaseSpaceGrid, params: StarParams,
                     flat: bool = False) -> PhaseSpaceGrid:
    """Oracle quadrature of the WKB kernel; `flat` reproduces weyl_product_quad."""
    require_valid(e)
    B = pairing_matrix(e)
    if flat:
        return weyl_product_quad(u, v, params.hbar, pairing=B)
    return kernel_quadrature(u, v, params.hbar, B,
                             z_of=lambda d: z_map(e, d),
                             amplitude_of=lambda d: np.abs(twist_jacobian_det(e, d)))
