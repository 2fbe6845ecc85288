"""
Trace, inner products and the operator-norm estimate.

All integrals are Riemann sums against dmu = |det B| da dl.
"""
from typing import Optional

import numpy as np

from star_src.algebra.eset import ESETStructure, pairing_matrix
from star_src.constants import (DEFAULT_INTERPOLATION, DEFAULT_OVERSAMPLE,
                                POWER_ITERATIONS, PRODUCT_LOG_FILENAME)
from star_src.entity.config_entity import StarParams
from star_src.logger import get_logger
from star_src.star.deformed import star_hbar
from star_src.transform.grid import PhaseSpaceGrid
from star_src.transform.intertwiner import T_hbar

logger = get_logger(__name__, log_filename=PRODUCT_LOG_FILENAME)


def trace(u: PhaseSpaceGrid, pairing: Optional[np.ndarray] = None) -> complex:
    return complex(np.sum(u.data) * u.cell_volume(pairing))


def inner_product_L2(u: PhaseSpaceGrid, v: PhaseSpaceGrid, pairing: Optional[np.ndarray] = None) -> complex:
    """(u, v) = int u conj(v) dmu."""
    u.require_match(v)
    return complex(np.vdot(v.data, u.data) * u.cell_volume(pairing))


def inner_product_E(e: ESETStructure, u: PhaseSpaceGrid, v: PhaseSpaceGrid, hbar: float,
                    flat: bool = False, oversample: int = DEFAULT_OVERSAMPLE,
                    interpolation: str = DEFAULT_INTERPOLATION) -> complex:
    """(u, v)_E = (T_hbar u, T_hbar v)_{L2}, evaluated on l-axes padded by `oversample`."""
    u.require_match(v)
    Tu = T_hbar(e, u.pad_l(oversample), hbar, flat=flat, interpolation=interpolation)
    Tv = T_hbar(e, v.pad_l(oversample), hbar, flat=flat, interpolation=interpolation)
    return inner_product_L2(Tu, Tv, pairing_matrix(e))


def operator_norm_estimate(e: ESETStructure, a: PhaseSpaceGrid, params: StarParams,
                           iterations: int = POWER_ITERATIONS) -> float:
    """
    Estimate of ||L_a|| on the E-completion by power iteration on L_a^* L_a,
    with L_a^* = L_{conj(a)}. This is an estimate only: it sees the grid, not
    the Hilbert space.
    """
    if not np.any(a.data):
        return 0.0
    flat = params.method == "flat"

    def norm(g: PhaseSpaceGrid) -> float:
        return float(np.sqrt(abs(inner_product_E(e, g, g, params.hbar, flat=flat,
                                                 oversample=params.oversample,
                                                 interpolation=params.interpolation))))

    adjoint = a.with_data(np.conj(a.data))
    b = adjoint
    for _ in range(iterations):
        image = star_hbar(e, adjoint, star_hbar(e, a, b, params), params)
        size = norm(image)
        if size == 0.0:
            return 0.0
        b = image.with_data(image.data / size)
    size = norm(b)
    estimate = norm(star_hbar(e, a, b, params)) / size if size > 0 else 0.0
    logger.debug("operator_norm_estimate: %.6g after %d iterations", estimate, iterations)
    return estimate
