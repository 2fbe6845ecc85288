"""
Resampling of band-limited samples at scattered points along trailing axes.

`values` has shape (*batch, *axes_shape); `points` has shape (P, n) where n is
the number of trailing axes; the result has shape (*batch, P). Points outside
[min, max] of any axis evaluate to zero.
"""
from typing import Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from star_src.constants import INTERPOLATIONS
from star_src.exception import StarParamsError


def _inside(points: np.ndarray, mins: Sequence[float], steps: Sequence[float], counts: Sequence[int]) -> np.ndarray:
    lo = np.asarray(mins, dtype=float)
    hi = lo + np.asarray(steps, dtype=float) * (np.asarray(counts) - 1)
    slack = 1e-12 * np.asarray(steps, dtype=float)
    return np.all((points >= lo - slack) & (points <= hi + slack), axis=-1)


def sinc_resample(values: np.ndarray, mins: Sequence[float], steps: Sequence[float],
                  points: np.ndarray) -> np.ndarray:
    """Whittaker-Shannon interpolation, one separable sinc matrix per axis."""
    n = points.shape[-1]
    counts = values.shape[-n:]
    operands = [values, [Ellipsis] + list(range(1, n + 1))]
    for d in range(n):
        nodes = mins[d] + steps[d] * np.arange(counts[d])
        kernel = np.sinc((points[:, d, None] - nodes[None, :]) / steps[d])
        operands += [kernel, [0, d + 1]]
    out = np.einsum(*operands, [Ellipsis, 0], optimize=True)
    out[..., ~_inside(points, mins, steps, counts)] = 0.0
    return out


def cubic_resample(values: np.ndarray, mins: Sequence[float], steps: Sequence[float],
                   points: np.ndarray) -> np.ndarray:
    n = points.shape[-1]
    counts = values.shape[-n:]
    batch = values.shape[:-n]
    nodes = tuple(mins[d] + steps[d] * np.arange(counts[d]) for d in range(n))
    # RegularGridInterpolator wants the grid axes leading
    flat = np.moveaxis(values.reshape((-1,) + counts), 0, -1)

    def interpolate(part: np.ndarray) -> np.ndarray:
        rgi = RegularGridInterpolator(nodes, part, method="cubic", bounds_error=False, fill_value=0.0)
        return rgi(points)

    out = interpolate(flat.real) + 1j * interpolate(flat.imag)
    out = np.moveaxis(out, -1, 0).reshape(batch + (points.shape[0],))
    out[..., ~_inside(points, mins, steps, counts)] = 0.0
    return out


def resample(values: np.ndarray, mins: Sequence[float], steps: Sequence[float], points: np.ndarray,
             interpolation: str) -> np.ndarray:
    if interpolation == "sinc":
        return sinc_resample(values, mins, steps, points)
    if interpolation == "cubic":
        return cubic_resample(values, mins, steps, points)
    raise StarParamsError(f"interpolation must be one of {INTERPOLATIONS}, got '{interpolation}'.")
