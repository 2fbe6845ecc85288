"""
Custom exceptions for the WKB star-product library.
"""

class StarQuantError(Exception):
    """
    Base class for all custom exceptions in the library.
    All other custom exceptions should inherit from this class.
    """
    def __init__(self, message="An error occurred in the star-product library."):
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return f"[{self.__class__.__name__}]: {self.message}"


# --- Structure Exceptions ---

class StructureError(StarQuantError):
    """Raised for problems with ESET structure data."""
    pass

class StructureShapeError(StructureError):
    """Raised when a structure field has the wrong shape (not an axiom violation)."""
    def __init__(self, field, expected, got, message=None):
        if message is None:
            message = f"Field '{field}' has shape {got}, expected {expected}."
        super().__init__(message)
        self.field = field
        self.expected = expected
        self.got = got

class StructureLoadError(StructureError):
    """Raised when a structure file cannot be read or parsed."""
    def __init__(self, path, reason, message=None):
        if message is None:
            message = f"Could not load structure from '{path}': {reason}"
        super().__init__(message)
        self.path = path

class AxiomViolationError(StructureError):
    """Raised when a structure fails one or more ESET axioms."""
    def __init__(self, violations, message=None):
        if message is None:
            message = "Structure violates ESET axioms: " + "; ".join(violations)
        super().__init__(message)
        self.violations = list(violations)


# --- Geometry Exceptions ---

class MidpointDomainError(StarQuantError):
    """Raised when cosh(a/2) restricted to L is singular."""
    def __init__(self, a, message=None):
        if message is None:
            message = f"Midpoint undefined at a={list(a)}: cosh(a/2)|_L is singular."
        super().__init__(message)
        self.a = a

class TwistDivergenceError(StarQuantError):
    """Raised when Newton iteration for the inverse twisting map does not converge."""
    def __init__(self, value, iterations, residual, message=None):
        if message is None:
            message = (f"twist_inverse did not converge for a={list(value)} after "
                       f"{iterations} iterations (residual {residual:.3e}).")
        super().__init__(message)
        self.value = value
        self.iterations = iterations
        self.residual = residual

class BarycenterError(StarQuantError):
    """Raised when the barycenter function has no sign change along the path."""
    pass

class UnsupportedVectorError(StarQuantError):
    """Raised when an algebra vector is outside the supported subspace."""
    pass

class SkewMatrixError(StarQuantError):
    """Raised when a matrix expected to be skew-symmetric is not."""
    def __init__(self, residual, message=None):
        if message is None:
            message = f"Matrix is not skew-symmetric (residual {residual:.3e})."
        super().__init__(message)
        self.residual = residual


# --- Grid Exceptions ---

class GridError(StarQuantError):
    """Raised when grid metadata breaks an invariant."""
    pass

class GridMismatchError(GridError):
    """Raised when two grids that must match do not."""
    pass

class DualFlagError(GridError):
    """Raised when a transform receives a grid in the wrong representation."""
    def __init__(self, expected_dual, message=None):
        if message is None:
            wanted = "dual" if expected_dual else "primal"
            message = f"Expected a {wanted} grid."
        super().__init__(message)
        self.expected_dual = expected_dual

class BoundaryError(GridError):
    """Raised when a product operand is not negligible on the outermost grid samples."""
    def __init__(self, ratio, tolerance, message=None):
        if message is None:
            message = (f"Operand reaches the grid boundary: peak boundary magnitude {ratio:.3e} "
                       f"of the peak exceeds {tolerance:.0e}.")
        super().__init__(message)
        self.ratio = ratio
        self.tolerance = tolerance

class GridFormatError(GridError):
    """Raised when an SSQG file is malformed."""
    def __init__(self, path, reason, message=None):
        if message is None:
            message = f"Malformed SSQG file '{path}': {reason}"
        super().__init__(message)
        self.path = path


# --- Product Exceptions ---

class StarParamsError(StarQuantError):
    """Raised for invalid product parameters."""
    pass

class MoyalOrderError(StarQuantError):
    """Raised when the requested Moyal truncation order is unsupported."""
    def __init__(self, order, max_order, message=None):
        if message is None:
            message = f"Moyal order {order} exceeds the supported maximum {max_order}."
        super().__init__(message)
        self.order = order


# --- Harness Exceptions ---

class UnknownCheckError(StarQuantError):
    """Raised when a suite configuration names a check that does not exist."""
    def __init__(self, name, message=None):
        if message is None:
            message = f"Unknown check '{name}' in suite configuration."
        super().__init__(message)
        self.name = name

class SuiteConfigError(StarQuantError):
    """Raised when a suite configuration file is unreadable or inconsistent."""
    pass
