class ArgLabError(Exception):
    pass


class FormatError(ArgLabError, ValueError):
    """Malformed input text or an input that violates a structural invariant."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapExceeded(ArgLabError):
    """A size cap or search budget was exceeded; no answer was produced."""


class BudgetExceeded(CapExceeded):
    pass


class InvalidAlpha(ArgLabError, ValueError):
    """An acceptance vector does not match the credulously accepted arguments."""
