"""Exception types shared across the package."""


class AliaError(Exception):
    """Base class for all package errors."""


class DomainError(AliaError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ThetaOverflowError(AliaError, OverflowError):
    """The dominant theta-series term exceeds the double range."""


class PoleError(AliaError, ZeroDivisionError):
    """Evaluation too close to a pole."""


class DegenerateError(AliaError, ValueError):
    """Parameters sit on a degenerate locus (coincident roots, double zero, ...)."""


class ConvergenceError(AliaError, RuntimeError):
    """An iteration did not converge within its budget."""


class SingularError(AliaError, ZeroDivisionError):
    """A linear system or matrix is singular."""


class BranchError(AliaError, ValueError):
    """No square-root branch choice reproduces the requested object."""


class CalibrationError(AliaError, RuntimeError):
    """A fitted normalization constant failed its validation."""


class OffCurveError(DomainError):
    """A point does not satisfy the curve equations."""
