"""
Exception hierarchy for the N-path duality toolkit

Library code raises these; the command-line layer maps them to exit codes.
"""

from typing import Optional


class DualityError(Exception):
    """Base class for every error raised by npath_duality"""


class DimensionError(DualityError, ValueError):
    """Shapes do not agree (vector dimensions, square matrices, path counts)"""


class NonFiniteError(DualityError, ValueError):
    """An input contains NaN or Inf"""


class InvariantViolation(DualityError, ValueError):
    """A value type invariant does not hold, e.g. an unnormalized detector state"""

    def __init__(self, invariant: str, index: Optional[int] = None, detail: str = ""):
        self.invariant = invariant
        self.index = index
        self.detail = detail
        message = f"invariant violated: {invariant}"
        if index is not None:
            message += f" (index {index})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class PreconditionError(DualityError, ValueError):
    """An operation was called outside its domain"""


class NumericalDomainError(DualityError, ArithmeticError):
    """A quantity left its mathematical domain by more than rounding noise"""


class ScenarioParseError(DualityError):
    """A scenario document could not be parsed into states"""

    def __init__(self, message: str, field: str = "", line: Optional[int] = None,
                 column: Optional[int] = None):
        self.field = field
        self.line = line
        self.column = column
        location = []
        if line is not None:
            location.append(f"line {line}")
            if column is not None:
                location.append(f"column {column}")
        if field:
            location.append(f"field '{field}'")
        prefix = ", ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class UnknownFamilyError(DualityError, KeyError):
    """Unknown scenario family id"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown scenario family"
