"""Exception types raised by psikit."""


class PsikitError(Exception):
    """Base class for all psikit errors."""


class EmptyInputError(PsikitError, ValueError):
    """An outcome stream or table list had no elements."""


class UndefinedBiasError(PsikitError, ValueError):
    """Bias score requested for a table with no observed events (a + c = 0)."""


class ParseError(PsikitError, ValueError):
    """A data file could not be parsed.

    ``line`` is the 1-based line number of the offending row, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConsistencyError(PsikitError, ValueError):
    """A parsed series is internally inconsistent (e.g. a missing reference actual)."""


class TieError(PsikitError, ValueError):
    """A forecast or actual equals its reference value under the ``error`` tie policy."""
