"""
Reading and writing SSQG grid files.

Layout (little-endian): magic b"SSQG", u32 version, u32 n_a, u32 n_l, u8 dual,
f64 hbar, then per axis (a-axes first) u64 count, f64 min, f64 step, then the
samples as interleaved f64 (re, im) pairs in row-major order.
"""
import os

import numpy as np
from loguru import logger

from star_src.constants import SSQG_MAGIC, SSQG_VERSION
from star_src.exception import GridError, GridFormatError
from star_src.transform.grid import PhaseSpaceGrid

HEADER_DTYPE = np.dtype([("magic", "S4"), ("version", "<u4"), ("n_a", "<u4"),
                         ("n_l", "<u4"), ("dual", "u1"), ("hbar", "<f8")])
AXIS_DTYPE = np.dtype([("count", "<u8"), ("min", "<f8"), ("step", "<f8")])
DATA_DTYPE = np.dtype("<c16")


def encode_grid(grid: PhaseSpaceGrid) -> bytes:
    header = np.zeros(1, dtype=HEADER_DTYPE)
    header[0] = (SSQG_MAGIC, SSQG_VERSION, grid.n_a, grid.n_l, int(grid.dual), grid.hbar)
    axes = np.array(list(zip(grid.counts, grid.mins, grid.steps)), dtype=AXIS_DTYPE)
    return header.tobytes() + axes.tobytes() + grid.data.astype(DATA_DTYPE).tobytes()


def decode_grid(buffer: bytes, path: str = "<memory>") -> PhaseSpaceGrid:
    """
    Parse SSQG bytes.

    Raises:
        GridFormatError: bad magic or version, truncated or oversized payload,
            or metadata that breaks a grid invariant.
    """
    if len(buffer) < HEADER_DTYPE.itemsize:
        raise GridFormatError(path, f"file holds {len(buffer)} bytes, header needs {HEADER_DTYPE.itemsize}")
    header = np.frombuffer(buffer, dtype=HEADER_DTYPE, count=1)[0]
    if bytes(header["magic"]) != SSQG_MAGIC:
        raise GridFormatError(path, f"bad magic {bytes(header['magic'])!r}")
    if int(header["version"]) != SSQG_VERSION:
        raise GridFormatError(path, f"unsupported version {int(header['version'])}")
    if int(header["dual"]) not in (0, 1):
        raise GridFormatError(path, f"dual flag must be 0 or 1, got {int(header['dual'])}")

    n_a, n_l = int(header["n_a"]), int(header["n_l"])
    ndim = n_a + n_l
    offset = HEADER_DTYPE.itemsize
    if len(buffer) < offset + ndim * AXIS_DTYPE.itemsize:
        raise GridFormatError(path, "truncated axis table")
    axes = np.frombuffer(buffer, dtype=AXIS_DTYPE, count=ndim, offset=offset)
    offset += ndim * AXIS_DTYPE.itemsize

    counts = tuple(int(c) for c in axes["count"])
    size = int(np.prod(counts)) if counts else 0
    expected = offset + size * DATA_DTYPE.itemsize
    if len(buffer) != expected:
        raise GridFormatError(path, f"payload holds {len(buffer) - offset} bytes, axes require "
                                    f"{size * DATA_DTYPE.itemsize}")
    data = np.frombuffer(buffer, dtype=DATA_DTYPE, count=size, offset=offset)

    try:
        return PhaseSpaceGrid(n_a, n_l, counts, tuple(axes["min"]), tuple(axes["step"]),
                              data.astype(np.complex128), float(header["hbar"]), dual=bool(header["dual"]))
    except GridError as e:
        raise GridFormatError(path, e.message) from e


def write_grid(grid: PhaseSpaceGrid, path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "wb") as f:
        f.write(encode_grid(grid))
    logger.info(f"Wrote SSQG grid {grid.counts} (hbar={grid.hbar}, dual={grid.dual}) to {path}")


def read_grid(path: str) -> PhaseSpaceGrid:
    try:
        with open(path, "rb") as f:
            buffer = f.read()
    except OSError as e:
        raise GridFormatError(path, str(e)) from e
    grid = decode_grid(buffer, path)
    logger.debug(f"Read SSQG grid {grid.counts} (hbar={grid.hbar}) from {path}")
    return grid
