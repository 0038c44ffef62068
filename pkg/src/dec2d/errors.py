"""Exception types shared across the package."""


class DecError(Exception):
    """Base class for all package errors."""


class DegreeMismatch(DecError):
    """Operands have incompatible degrees or dimensions."""


class ShapeMismatch(DecError):
    """Operands live on different grids."""


class StarUndefinedOnWindowBoundary(DecError):
    """The Hodge star would need components beyond the ghost ring."""


class OrderingShapeMismatch(DecError):
    """A named basis ordering does not exist for this grid shape."""


class DimensionMismatch(DecError):
    """A vector length does not match a matrix dimension."""


class NotClosed(DecError):
    """A cohomology query received a form that is not d-closed."""


class NotInRange(DecError):
    """A right-hand side has a harmonic component and is not solvable."""


class SolverFailure(DecError):
    """A dense eigendecomposition failed to converge."""
