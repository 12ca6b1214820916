"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the admissible domain of an operation."""


class NumericalError(ArithmeticError):
    """A computation produced a non-finite or otherwise unusable value."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node
