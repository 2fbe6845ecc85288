"""
Truncated Moyal expansion and the Poisson bracket of the chart.

    u * v ~ sum_k nu^k / k! Pi^{i1 j1} ... Pi^{ik jk} d_{i1..ik} u d_{j1..jk} v

with Pi = [[0, B^{-T}], [-B^{-1}, 0]] on coordinates (a, l). Derivatives are
spectral by default; "finite" uses second-order differences for data that is
not periodic on the box.
"""
import math
from collections import Counter
from itertools import combinations_with_replacement
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import fft as sp_fft

from star_src.constants import MAX_MOYAL_ORDER
from star_src.exception import GridError, MoyalOrderError
from star_src.transform.fourier import angular_frequencies
from star_src.transform.grid import PhaseSpaceGrid

DIFFERENTIATIONS = ("spectral", "finite")


def poisson_tensor(n: int, pairing: Optional[np.ndarray] = None) -> np.ndarray:
    B = np.eye(n) if pairing is None else np.asarray(pairing, dtype=float)
    B_inv = np.linalg.inv(B)
    zero = np.zeros((n, n))
    return np.block([[zero, B_inv.T], [-B_inv, zero]])


class _Derivatives:
    """Memoised partial derivatives of one grid function, keyed by multi-index."""

    def __init__(self, g: PhaseSpaceGrid, differentiation: str):
        if differentiation not in DIFFERENTIATIONS:
            raise GridError(f"differentiation must be one of {DIFFERENTIATIONS}, got '{differentiation}'.")
        self.g = g
        self.differentiation = differentiation
        self.cache: Dict[Tuple[int, ...], np.ndarray] = {(0,) * g.ndim: g.data}
        if differentiation == "spectral":
            self.spectrum = sp_fft.fftn(g.data)
            self.freqs = [angular_frequencies(g.counts[i], g.steps[i]) for i in range(g.ndim)]

    def __call__(self, alpha: Tuple[int, ...]) -> np.ndarray:
        if alpha in self.cache:
            return self.cache[alpha]
        if self.differentiation == "spectral":
            factor = np.ones(self.g.counts, dtype=np.complex128)
            for axis, order in enumerate(alpha):
                if order:
                    shape = [1] * self.g.ndim
                    shape[axis] = -1
                    factor = factor * np.reshape((1j * self.freqs[axis]) ** order, shape)
            value = sp_fft.ifftn(self.spectrum * factor)
        else:
            axis = next(i for i, order in enumerate(alpha) if order)
            lower = list(alpha)
            lower[axis] -= 1
            value = np.gradient(self(tuple(lower)), self.g.steps[axis], axis=axis, edge_order=2)
        self.cache[alpha] = value
        return value


def moyal_series(u: PhaseSpaceGrid, v: PhaseSpaceGrid, nu: complex, order: int,
                 pairing: Optional[np.ndarray] = None, differentiation: str = "spectral",
                 terms: bool = False):
    """
    Truncated expansion up to `order`.

    Returns the summed grid, or with terms=True the list of per-order grids
    (term k already carries nu^k / k!).

    Raises:
        MoyalOrderError: order > MAX_MOYAL_ORDER.
    """
    if order > MAX_MOYAL_ORDER or order < 0:
        raise MoyalOrderError(order, MAX_MOYAL_ORDER)
    u.require_match(v)
    ndim = u.ndim
    Pi = poisson_tensor(u.n_a, pairing)
    pairs = [(i, j) for i in range(ndim) for j in range(ndim) if Pi[i, j] != 0.0]
    du = _Derivatives(u, differentiation)
    dv = _Derivatives(v, differentiation)

    series = [u.with_data(u.data * v.data)]
    for k in range(1, order + 1):
        total = np.zeros(u.counts, dtype=np.complex128)
        for chosen in combinations_with_replacement(pairs, k):
            counts = Counter(chosen)
            weight = math.factorial(k) / math.prod(math.factorial(m) for m in counts.values())
            weight *= math.prod(Pi[i, j] ** m for (i, j), m in counts.items())
            alpha = [0] * ndim
            beta = [0] * ndim
            for (i, j), m in counts.items():
                alpha[i] += m
                beta[j] += m
            total += weight * du(tuple(alpha)) * dv(tuple(beta))
        series.append(u.with_data(nu ** k / math.factorial(k) * total))
    if terms:
        return series
    return u.with_data(sum(term.data for term in series))


def poisson_bracket(u: PhaseSpaceGrid, v: PhaseSpaceGrid, pairing: Optional[np.ndarray] = None,
                    differentiation: str = "spectral") -> PhaseSpaceGrid:
    """{u, v} = d_a u . B^{-T} d_l v - d_l u . B^{-1} d_a v."""
    return moyal_series(u, v, 1.0, 1, pairing, differentiation, terms=True)[1]
