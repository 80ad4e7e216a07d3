"""Exception types shared across the package."""


class NilcommError(Exception):
    """Base class for all package errors."""


class FieldError(NilcommError, ValueError):
    """Unsupported field parameters or an invalid field operation."""


class DimensionMismatch(NilcommError, ValueError):
    pass


class FieldMismatch(NilcommError, ValueError):
    pass


class SingularMatrix(NilcommError, ValueError):
    pass


class NotNilpotent(NilcommError, ValueError):
    pass


class InvariantViolation(NilcommError, ValueError):
    """A constructed object fails one of its defining equations.

    ``equation`` names the failing equation, e.g. ``"[A,B] = 0"``.
    """

    def __init__(self, message, equation=None):
        super().__init__(message)
        self.equation = equation


class BudgetExceeded(NilcommError, RuntimeError):
    """An enumeration would exceed the configured visit budget."""

    def __init__(self, required, budget):
        super().__init__(f"enumeration needs {required} visits, budget is {budget}")
        self.required = required
        self.budget = budget
