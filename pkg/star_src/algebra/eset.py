"""
Elementary solvable exact triples.

An ESETStructure stores the splitting homomorphism rho: a -> End(b) with
b = k (+) L (k basis first, then L basis) and the functional xi on k. The
module validates the axioms, applies rho, evaluates the hyperbolic matrix
functions and the symplectic pairing between a and L.
"""
import json
import os
from dataclasses import dataclass
from typing import Dict, List, Union

import numpy as np

from star_src.algebra.matfuncs import sinh_cosh
from star_src.constants import STRUCTURE_LOG_FILENAME, STRUCTURE_TOLERANCE
from star_src.exception import (AxiomViolationError, StructureLoadError,
                                StructureShapeError, UnsupportedVectorError)
from star_src.logger import get_logger

logger = get_logger(__name__, log_filename=STRUCTURE_LOG_FILENAME)

VECTOR_TAGS = ("A", "K", "L", "B", "G")


@dataclass(frozen=True, eq=False)
class ESETStructure:
    name: str
    n_a: int
    n_k: int
    n_l: int
    rho: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        for field_name in ("n_a", "n_k", "n_l"):
            value = getattr(self, field_name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise StructureShapeError(field_name, "positive integer", value)
        try:
            rho = np.array(self.rho, dtype=float)
            xi = np.array(self.xi, dtype=float)
        except (TypeError, ValueError) as e:
            raise StructureShapeError("rho/xi", "numeric arrays", type(e).__name__) from e
        n_b = self.n_k + self.n_l
        if rho.shape != (self.n_a, n_b, n_b):
            raise StructureShapeError("rho", (self.n_a, n_b, n_b), rho.shape)
        if xi.shape != (self.n_k,):
            raise StructureShapeError("xi", (self.n_k,), xi.shape)
        if not (np.all(np.isfinite(rho)) and np.all(np.isfinite(xi))):
            raise StructureShapeError("rho/xi", "finite entries", "non-finite entries")
        rho.setflags(write=False)
        xi.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "xi", xi)

    @property
    def n_b(self) -> int:
        return self.n_k + self.n_l

    def dim(self, tag: str) -> int:
        return {"A": self.n_a, "K": self.n_k, "L": self.n_l, "B": self.n_b,
                "G": self.n_a + self.n_b}[tag]

    @classmethod
    def from_dict(cls, raw: Dict) -> "ESETStructure":
        missing = [k for k in ("n_a", "n_k", "n_l", "rho", "xi") if k not in raw]
        if missing:
            raise StructureShapeError(missing[0], "present", "missing")
        return cls(name=str(raw.get("name", "unnamed")), n_a=raw["n_a"], n_k=raw["n_k"],
                   n_l=raw["n_l"], rho=raw["rho"], xi=raw["xi"])

    def to_dict(self) -> Dict:
        return {"name": self.name, "n_a": int(self.n_a), "n_k": int(self.n_k), "n_l": int(self.n_l),
                "rho": self.rho.tolist(), "xi": self.xi.tolist()}


@dataclass(frozen=True, eq=False)
class AlgebraVector:
    """Coordinates of an element of one of the subspaces a, k, L, b or g."""
    which: str
    coords: np.ndarray

    def __post_init__(self):
        if self.which not in VECTOR_TAGS:
            raise UnsupportedVectorError(f"Unknown vector tag '{self.which}'.")
        object.__setattr__(self, "coords", np.atleast_1d(np.asarray(self.coords, dtype=float)))

    def check(self, e: ESETStructure) -> np.ndarray:
        expected = e.dim(self.which)
        if self.coords.shape != (expected,):
            raise StructureShapeError(f"{self.which}-vector", (expected,), self.coords.shape)
        return self.coords


Vector = Union[AlgebraVector, np.ndarray, List[float], float]


def _coords(e: ESETStructure, v: Vector, tag: str) -> np.ndarray:
    if isinstance(v, AlgebraVector):
        if v.which != tag:
            raise UnsupportedVectorError(f"Expected a {tag}-vector, got a {v.which}-vector.")
        return v.check(e)
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] != e.dim(tag):
        raise StructureShapeError(f"{tag}-vector", (e.dim(tag),), arr.shape)
    return arr


def load_structure(path: str) -> ESETStructure:
    """
    Read an ESET JSON file.

    Raises:
        StructureLoadError: unreadable file or invalid JSON.
        StructureShapeError: fields with wrong shapes.
    """
    if not os.path.isfile(path):
        raise StructureLoadError(path, "file not found")
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise StructureLoadError(path, str(e)) from e
    if not isinstance(raw, dict):
        raise StructureLoadError(path, "top-level JSON value is not an object")
    structure = ESETStructure.from_dict(raw)
    logger.info("Loaded structure '%s' (n_a=%d, n_k=%d, n_l=%d) from %s",
                structure.name, structure.n_a, structure.n_k, structure.n_l, path)
    return structure


def save_structure(e: ESETStructure, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(e.to_dict(), f, indent=2)


def pairing_matrix(e: ESETStructure) -> np.ndarray:
    """B[i][j] = xi(rho(e_i) f_j), shape (n_a, n_l)."""
    return np.einsum("k,ikj->ij", e.xi, e.rho[:, :e.n_k, e.n_k:])


def validate(e: ESETStructure, tol: float = STRUCTURE_TOLERANCE) -> List[str]:
    """
    Check the ESET axioms.

    Returns:
        list of violation descriptions, empty iff the structure is valid.
    """
    violations = []
    n_k = e.n_k
    if e.n_a != e.n_l:
        violations.append(f"dimension mismatch: n_a={e.n_a} differs from n_l={e.n_l}")

    for i in range(e.n_a):
        for j in range(i + 1, e.n_a):
            residual = np.max(np.abs(e.rho[i] @ e.rho[j] - e.rho[j] @ e.rho[i]))
            if residual > tol:
                violations.append(f"commutativity: rho(e_{i}) and rho(e_{j}) do not commute "
                                  f"(residual {residual:.3e})")

    for i in range(e.n_a):
        kk = np.max(np.abs(e.rho[i][:n_k, :n_k]))
        ll = np.max(np.abs(e.rho[i][n_k:, n_k:]))
        if kk > tol or ll > tol:
            blocks = " and ".join(name for name, size in (("KK", kk), ("LL", ll)) if size > tol)
            noun = "blocks" if kk > tol and ll > tol else "block"
            violations.append(f"sigma anticommutation: rho(e_{i}) has a nonzero {blocks} {noun} "
                              f"(max entry {max(kk, ll):.3e})")

    B = pairing_matrix(e)
    singular = np.linalg.svd(B, compute_uv=False)
    if e.n_a != e.n_l or singular.max() <= tol or singular.min() <= tol * max(1.0, singular.max()):
        violations.append("nondegeneracy: pairing matrix singular")

    stacked = e.rho.reshape(e.n_a, -1)
    if np.linalg.matrix_rank(stacked, tol=tol) < e.n_a:
        violations.append("injectivity: rho is not injective on a")

    if violations:
        logger.warning("Structure '%s' has %d violation(s).", e.name, len(violations))
    return violations


def require_valid(e: ESETStructure) -> ESETStructure:
    violations = validate(e)
    if violations:
        raise AxiomViolationError(violations)
    return e


def rho_matrix(e: ESETStructure, a: Vector) -> np.ndarray:
    """rho(a) = sum_i a_i rho(e_i); a may carry leading batch axes."""
    return np.tensordot(_coords(e, a, "A"), e.rho, axes=(-1, 0))


def rho_apply(e: ESETStructure, A: Vector, b: Vector) -> AlgebraVector:
    result = rho_matrix(e, A) @ _coords(e, b, "B")
    return AlgebraVector("B", result)


def sinh_matrix(e: ESETStructure, A: Vector) -> np.ndarray:
    return sinh_cosh(rho_matrix(e, A))[0]


def cosh_matrix(e: ESETStructure, A: Vector) -> np.ndarray:
    return sinh_cosh(rho_matrix(e, A))[1]


def omega_pair(e: ESETStructure, A: Vector, l: Vector) -> float:
    """Omega(A, l) = -xi(rho(A) l) = -A^T B l."""
    A = _coords(e, A, "A")
    l = _coords(e, l, "L")
    value = -np.einsum("...i,ij,...j->...", A, pairing_matrix(e), l)
    return float(value) if np.ndim(value) == 0 else value
