class PreconditionError(ValueError):
    """A mathematical precondition of an operation was violated."""


class DimensionMismatch(PreconditionError):
    pass


class FactorizationError(PreconditionError):
    """Peeled exponential coefficients disagree across generators."""
