"""
Uniformly sampled complex functions on P = a x L (or on its partial-Fourier
dual a x L*).

Axes are ordered a-axes first, then l-axes (or kappa-axes when `dual` is set);
`data` has shape `counts`. Partial transforms require centred l-axes,
min = -count * step / 2.
"""
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from star_src.constants import MIN_AXIS_POINTS
from star_src.exception import GridError, GridMismatchError


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and not n & (n - 1)


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    n_a: int
    n_l: int
    counts: Tuple[int, ...]
    mins: Tuple[float, ...]
    steps: Tuple[float, ...]
    data: np.ndarray
    hbar: float
    dual: bool = False

    def __post_init__(self):
        ndim = self.n_a + self.n_l
        counts = tuple(int(c) for c in self.counts)
        mins = tuple(float(m) for m in self.mins)
        steps = tuple(float(s) for s in self.steps)
        if self.n_a < 1 or self.n_l < 1:
            raise GridError(f"n_a and n_l must be positive, got {self.n_a}, {self.n_l}.")
        if not (len(counts) == len(mins) == len(steps) == ndim):
            raise GridError(f"Expected {ndim} axes of metadata, got {len(counts)}/{len(mins)}/{len(steps)}.")
        for c in counts:
            if c < MIN_AXIS_POINTS or not _is_power_of_two(c):
                raise GridError(f"Axis counts must be powers of two >= {MIN_AXIS_POINTS}, got {c}.")
        if not all(s > 0 and np.isfinite(s) for s in steps):
            raise GridError(f"Axis steps must be positive, got {steps}.")
        if not (self.hbar > 0 and np.isfinite(self.hbar)):
            raise GridError(f"hbar must be positive, got {self.hbar}.")
        data = np.asarray(self.data, dtype=np.complex128)
        if data.size != int(np.prod(counts)):
            raise GridError(f"Data has {data.size} samples, metadata requires {int(np.prod(counts))}.")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "mins", mins)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "data", data.reshape(counts))
        object.__setattr__(self, "dual", bool(self.dual))

    # -- construction -----------------------------------------------------

    @classmethod
    def uniform(cls, n_a: int, n_l: int, points: int, extent: float, hbar: float,
                a_extent: Optional[float] = None, data: Optional[np.ndarray] = None) -> "PhaseSpaceGrid":
        """Centred grid with `points` samples per axis on [-extent, extent)."""
        a_extent = extent if a_extent is None else a_extent
        extents = [a_extent] * n_a + [extent] * n_l
        counts = (points,) * (n_a + n_l)
        mins = tuple(-x for x in extents)
        steps = tuple(2.0 * x / points for x in extents)
        if data is None:
            data = np.zeros(counts, dtype=np.complex128)
        return cls(n_a, n_l, counts, mins, steps, data, hbar)

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray, np.ndarray], np.ndarray], n_a: int, n_l: int,
                      points: int, extent: float, hbar: float,
                      a_extent: Optional[float] = None) -> "PhaseSpaceGrid":
        """Sample func(a, l), where a and l have shapes (*counts, n_a) and (*counts, n_l)."""
        grid = cls.uniform(n_a, n_l, points, extent, hbar, a_extent)
        return grid.with_data(func(*grid.coordinates()))

    def with_data(self, data: np.ndarray, **changes) -> "PhaseSpaceGrid":
        return replace(self, data=data, **changes)

    # -- geometry ---------------------------------------------------------

    @property
    def ndim(self) -> int:
        return self.n_a + self.n_l

    @property
    def a_axes(self) -> Tuple[int, ...]:
        return tuple(range(self.n_a))

    @property
    def l_axes(self) -> Tuple[int, ...]:
        return tuple(range(self.n_a, self.ndim))

    @property
    def a_shape(self) -> Tuple[int, ...]:
        return self.counts[:self.n_a]

    @property
    def l_shape(self) -> Tuple[int, ...]:
        return self.counts[self.n_a:]

    def axis(self, i: int) -> np.ndarray:
        return self.mins[i] + self.steps[i] * np.arange(self.counts[i])

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Broadcast coordinate arrays a (*counts, n_a) and l (*counts, n_l)."""
        mesh = np.meshgrid(*[self.axis(i) for i in range(self.ndim)], indexing="ij")
        return np.stack(mesh[:self.n_a], axis=-1), np.stack(mesh[self.n_a:], axis=-1)

    def a_points(self) -> np.ndarray:
        """Flattened a-sample coordinates, shape (prod(a_shape), n_a), C order."""
        mesh = np.meshgrid(*[self.axis(i) for i in self.a_axes], indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def l_points(self) -> np.ndarray:
        mesh = np.meshgrid(*[self.axis(i) for i in self.l_axes], indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def cell_volume(self, pairing: Optional[np.ndarray] = None) -> float:
        """Volume of one sample cell for the measure |det B| da dl (B = I by default)."""
        volume = float(np.prod(self.steps))
        if pairing is not None:
            volume *= abs(float(np.linalg.det(pairing)))
        return volume

    def is_centered(self, axes: Sequence[int]) -> bool:
        return all(abs(self.mins[i] + 0.5 * self.counts[i] * self.steps[i]) <= 1e-9 * self.steps[i] * self.counts[i]
                   for i in axes)

    # -- comparison -------------------------------------------------------

    def same_layout(self, other: "PhaseSpaceGrid") -> bool:
        return (self.n_a == other.n_a and self.n_l == other.n_l and self.counts == other.counts
                and self.dual == other.dual
                and np.allclose(self.mins, other.mins, rtol=1e-12, atol=0)
                and np.allclose(self.steps, other.steps, rtol=1e-12, atol=0))

    def require_match(self, other: "PhaseSpaceGrid") -> None:
        if not self.same_layout(other):
            raise GridMismatchError(
                f"Grids differ: counts {self.counts} vs {other.counts}, mins {self.mins} vs {other.mins}, "
                f"steps {self.steps} vs {other.steps}, dual {self.dual} vs {other.dual}.")

    # -- resizing ---------------------------------------------------------

    def pad_l(self, factor: int) -> "PhaseSpaceGrid":
        """Centred zero padding of the l-axes to `factor` times their length."""
        if factor == 1:
            return self
        if not _is_power_of_two(factor):
            raise GridError(f"Padding factor must be a power of two, got {factor}.")
        if not self.is_centered(self.l_axes):
            raise GridError("Padding requires centred l-axes.")
        counts = self.counts[:self.n_a] + tuple(c * factor for c in self.l_shape)
        data = np.zeros(counts, dtype=np.complex128)
        window = tuple(slice(None) for _ in self.a_axes) + tuple(
            slice((c * factor - c) // 2, (c * factor - c) // 2 + c) for c in self.l_shape)
        data[window] = self.data
        mins = self.mins[:self.n_a] + tuple(-0.5 * c * s for c, s in zip(counts[self.n_a:], self.steps[self.n_a:]))
        return replace(self, counts=counts, mins=mins, data=data)

    def crop_l(self, l_shape: Sequence[int]) -> "PhaseSpaceGrid":
        """Inverse of pad_l: keep the centred block of the given l-counts."""
        l_shape = tuple(int(c) for c in l_shape)
        if l_shape == self.l_shape:
            return self
        window = tuple(slice(None) for _ in self.a_axes) + tuple(
            slice((big - c) // 2, (big - c) // 2 + c) for big, c in zip(self.l_shape, l_shape))
        counts = self.counts[:self.n_a] + l_shape
        mins = self.mins[:self.n_a] + tuple(-0.5 * c * s for c, s in zip(l_shape, self.steps[self.n_a:]))
        return replace(self, counts=counts, mins=mins, data=self.data[window].copy())

    def subsample(self, stride: int) -> "PhaseSpaceGrid":
        """Keep every `stride`-th sample on every axis."""
        if stride == 1:
            return self
        if not _is_power_of_two(stride):
            raise GridError(f"Stride must be a power of two, got {stride}.")
        window = tuple(slice(None, None, stride) for _ in range(self.ndim))
        counts = tuple(c // stride for c in self.counts)
        steps = tuple(s * stride for s in self.steps)
        return replace(self, counts=counts, steps=steps, data=self.data[window].copy())

    # -- norms ------------------------------------------------------------

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.data) ** 2) * np.prod(self.steps)))

    def boundary_peak(self) -> float:
        """Largest modulus on the outermost samples of every axis, relative to the peak."""
        peak = float(np.max(np.abs(self.data)))
        if peak == 0.0:
            return 0.0
        edge = 0.0
        for axis in range(self.ndim):
            for index in (0, -1):
                edge = max(edge, float(np.max(np.abs(np.take(self.data, index, axis=axis)))))
        return edge / peak


def relative_error(result: PhaseSpaceGrid, reference: PhaseSpaceGrid) -> float:
    """Relative discrete L2 distance ||result - reference|| / ||reference||."""
    result.require_match(reference)
    denominator = np.linalg.norm(reference.data)
    difference = np.linalg.norm(result.data - reference.data)
    return float(difference / denominator) if denominator > 0 else float(difference)
