"""
S-barycenters of quadruples for flat (Weyl-triple) phases.

For a quadruple (a, b, c, d) the barycenter g lies on the chart segment a -> c
and balances the two bracketings of the kernel,
h(g) = S(a,b,g) + S(g,c,d) - S(a,g,d) - S(g,b,c) = 0.
"""
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from star_src.constants import ROOT_MAX_ITER, ROOT_TOLERANCE
from star_src.exception import BarycenterError

PhaseFunction = Callable[[np.ndarray, np.ndarray, np.ndarray], float]


def barycenter_function(S: PhaseFunction, a, b, c, d, g) -> float:
    return float(S(a, b, g) + S(g, c, d) - S(a, g, d) - S(g, b, c))


def barycenter(S: PhaseFunction, a, b, c, d, tol: float = ROOT_TOLERANCE) -> np.ndarray:
    """
    Zero of h along g(t) = a + t (c - a), t in [0, 1], by Brent's method.

    Raises:
        BarycenterError: h has no sign change on the segment.
    """
    a, b, c, d = (np.asarray(p, dtype=float) for p in (a, b, c, d))
    if np.allclose(a, c, rtol=0, atol=0):
        return a.copy()

    def h(t: float) -> float:
        return barycenter_function(S, a, b, c, d, a + t * (c - a))

    if abs(h(0.5)) < tol:
        return a + 0.5 * (c - a)
    h_lo, h_hi = h(0.0), h(1.0)
    if abs(h_lo) < tol:
        return a.copy()
    if abs(h_hi) < tol:
        return c.copy()
    if np.sign(h_lo) == np.sign(h_hi):
        raise BarycenterError(f"No sign change of the barycenter function between {a} and {c}.")

    try:
        t = brentq(h, 0.0, 1.0, xtol=1e-15, maxiter=ROOT_MAX_ITER)
    except RuntimeError as err:
        raise BarycenterError(f"Root search between {a} and {c} did not converge: {err}") from err
    return a + t * (c - a)


def kernel_identity_residual(S: PhaseFunction, a, b, c, d, g, t) -> float:
    """
    max over samples t of |e^{i(S(a,b,t) + S(t,c,d))} - e^{i(S(a,s_g t,d) + S(s_g t,b,c))}|
    with the flat symmetry s_g(t) = 2g - t.
    """
    t = np.asarray(t, dtype=float)
    reflected = 2.0 * np.asarray(g, dtype=float) - t
    lhs = S(a, b, t) + S(t, c, d)
    rhs = S(a, reflected, d) + S(reflected, b, c)
    return float(np.max(np.abs(np.exp(1j * lhs) - np.exp(1j * rhs))))
