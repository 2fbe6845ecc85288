from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Point:
    """
    A point (a, l) of M = a x L in the global Darboux chart.

    Both fields may carry the same leading batch shape, so one Point can hold
    a whole sample of points.
    """
    a: np.ndarray
    l: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.atleast_1d(np.asarray(self.a, dtype=float)))
        object.__setattr__(self, "l", np.atleast_1d(np.asarray(self.l, dtype=float)))

    @classmethod
    def from_array(cls, values, n_a: int) -> "Point":
        values = np.asarray(values, dtype=float)
        return cls(values[..., :n_a], values[..., n_a:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.a, self.l], axis=-1)

    def allclose(self, other: "Point", atol: float = 1e-10) -> bool:
        return bool(np.allclose(self.a, other.a, atol=atol, rtol=0)
                    and np.allclose(self.l, other.l, atol=atol, rtol=0))


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element (a, k, l) of the transvection group G = a x k x L."""
    a: np.ndarray
    k: np.ndarray
    l: np.ndarray

    def __post_init__(self):
        for name in ("a", "k", "l"):
            object.__setattr__(self, name, np.atleast_1d(np.asarray(getattr(self, name), dtype=float)))

    @classmethod
    def identity(cls, n_a: int, n_k: int, n_l: int) -> "GroupElement":
        return cls(np.zeros(n_a), np.zeros(n_k), np.zeros(n_l))

    @property
    def b(self) -> np.ndarray:
        return np.concatenate([self.k, self.l], axis=-1)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.a, self.k, self.l], axis=-1)
