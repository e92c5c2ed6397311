class TightCycleError(Exception):
    """Base class for library errors."""


class FormatError(TightCycleError, ValueError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class PartitionFailed(TightCycleError):
    """No balanced partition was found within the retry budget.

    ``best`` holds the least-violating candidate that was sampled.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class ExpansionFailed(TightCycleError):
    """Expander extraction fell below its density floor without certifying."""


class PreconditionError(TightCycleError, ValueError):
    """An operation was called outside its documented precondition."""


class TooLarge(TightCycleError, ValueError):
    """Exhaustive routine refused an instance above its size cap."""
