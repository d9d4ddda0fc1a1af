"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class ParseError(ValidationError):
    """Malformed edge-list line."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class SizeError(ValueError):
    """Requested computation exceeds a configured size cap."""


class ConvergenceError(RuntimeError):
    """Fixed-point iteration did not reach the tolerance within max_iter."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (last residual {residual:.3e})")
        self.residual = residual
