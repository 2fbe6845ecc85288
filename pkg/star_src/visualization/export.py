"""
Flat CSV dumps of grids for plotting outside the library.
"""
import os

import numpy as np
import pandas as pd
from loguru import logger

from star_src.transform.grid import PhaseSpaceGrid


def grid_frame(grid: PhaseSpaceGrid) -> pd.DataFrame:
    """One row per sample: coordinates, then real and imaginary parts."""
    a, l = grid.coordinates()
    names_a = ["a"] if grid.n_a == 1 else [f"a{i}" for i in range(grid.n_a)]
    prefix = "k" if grid.dual else "l"
    names_l = [prefix] if grid.n_l == 1 else [f"{prefix}{i}" for i in range(grid.n_l)]
    columns = {}
    for i, name in enumerate(names_a):
        columns[name] = a[..., i].ravel()
    for i, name in enumerate(names_l):
        columns[name] = l[..., i].ravel()
    values = grid.data.ravel()
    columns["re"] = np.real(values)
    columns["im"] = np.imag(values)
    return pd.DataFrame(columns)


def dump_csv(grid: PhaseSpaceGrid, path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    grid_frame(grid).to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Dumped {grid.data.size} samples to {path}")
