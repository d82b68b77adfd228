"""Exception types raised by the library and mapped to CLI exit codes."""


class PSWidthError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ParseError(PSWidthError, ValueError):
    """Malformed DIMACS, WCNF, decomposition or ordering text."""

    exit_code = 2

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DecompositionError(PSWidthError, ValueError):
    """A branch decomposition or element ordering violates its invariants."""

    exit_code = 3


class GuardError(PSWidthError):
    """An enumeration guard or element limit refused the request."""

    exit_code = 4


class ConsistencyError(PSWidthError, RuntimeError):
    """Internal tables disagree with each other (corrupted PS families)."""

    exit_code = 5
