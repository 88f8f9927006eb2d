"""
Exception types raised by RidgeRunner.

Every error is also a ValueError so callers that only guard against bad
input keep working.
"""


class NavigationError(ValueError):
    """Base class for all RidgeRunner errors."""


class GridParseError(NavigationError):
    """Malformed ASCII grid document."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GridValidationError(NavigationError):
    """A grid value violates its range contract."""

    def __init__(self, message, cell=None):
        self.cell = cell
        if cell is not None:
            message = f"cell {tuple(cell)}: {message}"
        super().__init__(message)


class OutOfBoundsError(NavigationError):
    """A pose or index falls outside the grid it refers to."""


class DimensionError(NavigationError):
    """Two grids that must agree in shape do not."""


class ArgumentError(NavigationError):
    """An argument violates an operation's precondition."""


class NoPathError(NavigationError):
    """The least-cost search could not reach the goal cell."""


class ConfigError(NavigationError):
    """Scenario or run configuration is inconsistent."""
