"""Domain exceptions."""


class CyberCycleError(Exception):
    """Base class for every error raised by the cyber-cycle model."""


class DomainError(CyberCycleError, ValueError):
    """A precondition of a domain operation was violated."""


class ValidationError(DomainError):
    """A value object was constructed with values outside its invariants."""


class UnitMismatchError(DomainError):
    """Quantities with different time units were combined."""


class EnumerationLimitError(DomainError):
    """An exhaustive enumeration would exceed its configured bound."""

    def __init__(self, size: int, bound: int) -> None:
        super().__init__(f"Enumeration of {size} sequences exceeds the bound of {bound}")
        self.size = size
        self.bound = bound
