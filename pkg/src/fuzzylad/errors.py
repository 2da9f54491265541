"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A domain object violates one of its structural invariants."""


class OutOfUnitIntervalError(ValidationError):
    """A reconstructed relation entry would leave the unit interval."""


class NotConsistentError(ValueError):
    """An operation requiring a consistent relation received an inconsistent one."""


class InfeasibleError(RuntimeError):
    """The optimization model admits no feasible point."""


class IterationLimitError(RuntimeError):
    """The LP solver exhausted its pivot budget."""


class ParseError(ValueError):
    """A problem file is structurally malformed."""
