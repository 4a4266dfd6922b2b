"""Exception types shared across the library."""


class EvaluationError(Exception):
    """Base class for failures while evaluating an identity or series."""


class DomainError(EvaluationError):
    """Input outside the mathematical domain of an operation (pole, sign, range)."""


class ExceptionalPoint(DomainError):
    """Input hits an exceptional point of an identity and must be routed elsewhere.

    ``redirect`` names the operation that handles the point (e.g. a product
    evaluated at an integer multiple of pi has its own closed form).
    """

    def __init__(self, message, classification=None, redirect=None):
        super().__init__(message)
        self.classification = classification
        self.redirect = redirect


class NoConvergence(EvaluationError):
    """Truncation tolerance not reached within the term budget.

    Carries the partial evaluation accumulated so far, so callers can emit
    an inconclusive report instead of losing the work.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnknownIdentityError(KeyError):
    """Identity id not present in the catalog."""


class ParameterError(ValueError):
    """Malformed or missing parameter for a catalog identity."""
