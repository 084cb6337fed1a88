"""Exception types shared across the package."""


class HypergraphError(Exception):
    """Base class for all library errors."""


class ParseError(HypergraphError):
    """Input text could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(HypergraphError):
    """A domain invariant was violated."""


class ClassificationError(HypergraphError):
    """Classification preconditions not met (e.g. single-class input)."""
