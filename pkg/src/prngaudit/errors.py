"""Exception types shared across the toolkit."""


class PrngAuditError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(PrngAuditError, ValueError):
    """Matrix or vector dimensions do not satisfy an operation's contract."""


class DomainError(PrngAuditError, ValueError):
    """A numeric parameter is outside the range an operation supports."""


class UnknownAlgorithmError(PrngAuditError, ValueError):
    """Requested generator name is not in the registry."""


class LinearityError(PrngAuditError, RuntimeError):
    """A generator declared linear failed a linearity verification.

    Carries the offending state pair so the failure is reproducible.
    """

    def __init__(self, message, state_a=None, state_b=None):
        super().__init__(message)
        self.state_a = state_a
        self.state_b = state_b


class ResourceBudgetError(PrngAuditError, RuntimeError):
    """An analysis would exceed its configured memory/compute budget."""
