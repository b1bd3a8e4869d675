"""Exception types shared across the package."""


class FragilityError(Exception):
    """Base class for errors raised by this package."""


class GraphError(FragilityError, ValueError):
    """Invalid graph construction (self-loop, out-of-range endpoint, ...)."""


class InputFormatError(FragilityError, ValueError):
    """A file (edge list, layout scene) could not be parsed."""


class BudgetExceededError(FragilityError, RuntimeError):
    """A brute-force oracle was asked to enumerate beyond its budget."""
