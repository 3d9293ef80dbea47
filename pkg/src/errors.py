"""Exception hierarchy shared by every DiProPerm package."""

from typing import Optional


class DiPropermError(Exception):
    """Base class for all library errors."""


class DataError(DiPropermError, ValueError):
    """Invalid or inconsistent input data."""


class ParseError(DataError):
    """A cell in an input file could not be read as a finite number."""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        super().__init__(message)
        self.row = row
        self.column = column


class LabelError(DataError):
    """The label column does not describe exactly two groups."""


class EmptyGroupError(DataError):
    """One of the two samples has no observations."""


class DegenerateDirection(DiPropermError, ArithmeticError):
    """A classifier produced a zero (or numerically zero) normal vector."""


class SolverError(DiPropermError, RuntimeError):
    """An iterative solver stopped before reaching its optimality tolerance."""

    def __init__(
        self,
        message: str,
        residual: float = float("nan"),
        iterations: int = 0,
        replicate: Optional[int] = None,
    ):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.replicate = replicate


class ZeroVariance(DiPropermError, ArithmeticError):
    """A statistic's scale estimate is exactly zero."""


class PairingError(DiPropermError, ValueError):
    """Paired statistic requested on samples of different sizes."""


class DegenerateNull(DiPropermError, ArithmeticError):
    """The permutation distribution is constant, so no Gaussian fit exists."""


class SingularCovariance(DiPropermError, ArithmeticError):
    """Pooled covariance is not invertible (e.g. d > N - 2)."""


class SpecError(DiPropermError, ValueError):
    """Invalid distribution description."""


class ConfigError(DiPropermError, ValueError):
    """Invalid plan, solver option or command-line configuration."""


class DegenerateStatWarning(RuntimeWarning):
    """Emitted when a statistic returns an infinite sentinel value."""
