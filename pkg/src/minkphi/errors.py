class DomainError(ValueError):
    """Argument outside the domain of a function (log of a non-positive, etc.)."""


class SingularityError(ZeroDivisionError):
    """Division by an enclosure that contains zero."""


class SizeError(ValueError):
    """Requested range is beyond what the routine is documented to handle."""


class InvariantError(AssertionError):
    """An internal consistency check failed. Indicates a bug, never bad input."""
