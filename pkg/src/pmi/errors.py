"""Exception hierarchy for the PMI solver library."""

from __future__ import annotations


class PMIError(Exception):
    """Base class for every error raised by this package."""


class InstanceError(PMIError, ValueError):
    """The instance data is invalid."""


class NonPartition(InstanceError):
    def __init__(self, message: str, element: int | None = None, side: str | None = None):
        super().__init__(message)
        self.element = element
        self.side = side


class NegativeWeight(InstanceError):
    pass


class EmptyGroundSet(InstanceError):
    pass


class MalformedWeight(InstanceError):
    pass


class InvalidBudget(InstanceError):
    pass


class DimensionMismatch(InstanceError):
    pass


class ScaleOverflow(PMIError, OverflowError):
    """Scaled integer weights or their sums do not fit in 63 bits."""


class AlreadyBlocked(PMIError, ValueError):
    pass


class IndexOutOfRange(PMIError, IndexError):
    pass


class TooLarge(PMIError):
    """A brute-force routine was asked to enumerate beyond its cap."""


class EnumerationBudgetExceeded(PMIError):
    pass


class MemoryBudgetExceeded(PMIError):
    pass


class InvalidAction(PMIError, ValueError):
    pass


class BudgetUnderflow(PMIError, ArithmeticError):
    """A DP action spends more than the residual budget (a solver bug)."""


class EdgelessGraph(PMIError, ValueError):
    pass


class QOutOfRange(PMIError, ValueError):
    pass


class InfeasibleParams(PMIError, ValueError):
    pass


class GraphError(PMIError, ValueError):
    pass


class InstanceSyntaxError(PMIError, ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class SchemaError(InstanceError):
    def __init__(self, message: str, field: str, line: int | None = None, col: int | None = None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(f"{field}: {message}{where}")
        self.field = field
        self.line = line
        self.col = col
