"""Exception types shared across the package."""


class SizeLimitError(ValueError):
    """A requested height exceeds the ceiling an operation supports."""


class BudgetExceededError(RuntimeError):
    """An exhaustive search would visit more subsets than allowed."""


class NotSeparableError(ValueError):
    """Rows of an instance cannot be told apart by the available columns."""
