"""Exception hierarchy shared across the package."""


class CurveArithError(Exception):
    """Base class for all errors raised by curvearith."""


class InvalidInputError(CurveArithError, ValueError):
    """Input violates a documented precondition (bad model, zero function, ...)."""


class PoleError(CurveArithError, ArithmeticError):
    """A function was evaluated at one of its poles."""


class PrecisionError(CurveArithError):
    """An expansion table does not reach the requested precision."""


class ResourceLimitError(CurveArithError):
    """A computation would exceed a configured size or time limit."""


class StallError(CurveArithError):
    """Relation collection made no progress within the configured budget."""


class InternalError(CurveArithError, RuntimeError):
    """An internal consistency check failed; indicates a bug."""


class TimeoutExceeded(ResourceLimitError):
    """A wall-clock budget ran out; ``partial`` carries whatever was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class StrategyMismatch(InternalError):
    """Two strategies disagreed; ``divisor`` is the first offending query."""

    def __init__(self, message, divisor=None):
        super().__init__(message)
        self.divisor = divisor
