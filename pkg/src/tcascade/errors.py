"""Exception types shared across the package.

The CLI maps these onto exit codes: ``DataError`` -> 3, ``ResourceBoundError`` -> 4.
"""


class TCascadeError(Exception):
    """Base class for package errors."""


class DataError(TCascadeError, ValueError):
    """Malformed or out-of-range input data."""

    def __init__(self, message, *, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class ResourceBoundError(TCascadeError, RuntimeError):
    """An exhaustive computation would exceed its configured bound."""
