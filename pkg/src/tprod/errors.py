"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments: unknown names, out-of-range parameters."""


class GuardError(UsageError):
    """A size guard refused the request; raise the limit to override."""


class PreconditionError(ValueError):
    """An algebraic hypothesis required by the operation does not hold."""
