"""Exception hierarchy for spinsurf."""


class SpinsurfError(Exception):
    """Base class for all spinsurf errors."""


class GridMismatchError(SpinsurfError):
    """Two fields that must share a grid do not."""


class StencilError(SpinsurfError):
    """Grid too small to support the difference stencil."""


class ValidationError(SpinsurfError):
    """An input violates a documented precondition."""


class UnsupportedDomainError(SpinsurfError):
    """Operation requires periodicity the grid does not have."""


class DivergenceError(SpinsurfError):
    """Iterative solver failed to reach the requested tolerance.

    Carries the full residual history so callers can inspect or dump it.
    """

    def __init__(self, message, history):
        super().__init__(message)
        self.history = list(history)


class ParseError(SpinsurfError):
    """Expression syntax error with a byte offset into the source text."""

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.expected = tuple(expected)


class ConfigError(SpinsurfError):
    """Run configuration is malformed or inconsistent."""
