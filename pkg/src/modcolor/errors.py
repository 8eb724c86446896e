class ModColorError(Exception):
    """Base class for all errors raised by modcolor."""


class InvalidInputError(ModColorError, ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(ModColorError, RuntimeError):
    """A configured size cap or search budget was exceeded."""
