"""
Analytic test functions on P and helpers that sample them on grids.

Each factory returns f(a, l) acting on coordinate stacks of shape (..., n).
"""
from typing import Callable, Optional, Sequence

import numpy as np

from star_src.entity.config_entity import GridSpec
from star_src.transform.grid import PhaseSpaceGrid

PhaseFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _offset(x: np.ndarray, center: Sequence[float]) -> np.ndarray:
    return x - np.asarray(center, dtype=float)


def gaussian(center_a: Sequence[float], center_l: Sequence[float],
             width_a: float = 1.0, width_l: float = 1.0) -> PhaseFunction:
    """exp(-|a - ca|^2 / (2 wa^2) - |l - cl|^2 / (2 wl^2))."""
    def f(a, l):
        ra = np.sum(_offset(a, center_a) ** 2, axis=-1) / width_a ** 2
        rl = np.sum(_offset(l, center_l) ** 2, axis=-1) / width_l ** 2
        return np.exp(-0.5 * (ra + rl)).astype(np.complex128)
    return f


def bump(center_a: Sequence[float], center_l: Sequence[float], radius: float = 1.0) -> PhaseFunction:
    """Compactly supported C-infinity bump exp(1 - 1 / (1 - r^2)), r = distance / radius."""
    def f(a, l):
        r2 = (np.sum(_offset(a, center_a) ** 2, axis=-1) + np.sum(_offset(l, center_l) ** 2, axis=-1)) / radius ** 2
        out = np.zeros(r2.shape, dtype=np.complex128)
        inside = r2 < 1.0
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - r2[inside]))
        return out
    return f


def plateau(width: float, power: int = 4) -> PhaseFunction:
    """Super-Gaussian window exp(-((|a|^2 + |l|^2) / width^2)^power), flat near the origin."""
    def f(a, l):
        r2 = (np.sum(a ** 2, axis=-1) + np.sum(l ** 2, axis=-1)) / width ** 2
        return np.exp(-r2 ** power).astype(np.complex128)
    return f


def ground_state(hbar: float) -> PhaseFunction:
    """u0 = 2^n exp(-(|a|^2 + |l|^2) / hbar), idempotent for Weyl's product with B = I."""
    def f(a, l):
        n = a.shape[-1]
        return (2.0 ** n * np.exp(-(np.sum(a ** 2, axis=-1) + np.sum(l ** 2, axis=-1)) / hbar)).astype(np.complex128)
    return f


def coordinate(axis: int, window: Optional[PhaseFunction] = None) -> PhaseFunction:
    """The coordinate function x_axis of (a, l), optionally multiplied by a window."""
    def f(a, l):
        x = np.concatenate([a, l], axis=-1)[..., axis].astype(np.complex128)
        return x if window is None else x * window(a, l)
    return f


def sample(func: PhaseFunction, n: int, spec: GridSpec, hbar: float) -> PhaseSpaceGrid:
    return PhaseSpaceGrid.from_function(func, n, n, spec.points_per_axis, spec.extent, hbar,
                                        a_extent=spec.a_extent)
