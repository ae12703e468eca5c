"""Exception types shared across the package."""


class DetsurfError(Exception):
    """Base class for all package errors."""


class ParseError(DetsurfError):
    """Malformed tensor/design/report input.

    Carries the 1-based line and column of the offending token when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


class DefinitenessError(DetsurfError):
    """The determinant polynomial is not definite.

    Raised by surface and invariant operations: it signals that the input
    tensor is not absolutely nonsingular (or the polynomial was not
    sign-normalized first).
    """


class DegenerateJetError(DetsurfError):
    """The spherical parametrization degenerates at the requested point."""


class AccuracyError(DetsurfError):
    """Adaptive integration hit its subdivision limit before converging.

    The best available estimate is preserved so callers can decide whether
    it is still usable.
    """

    def __init__(self, message, best_estimate, error_estimate, evaluations):
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        self.evaluations = evaluations
        super().__init__(message)


class InvalidDesignError(DetsurfError):
    """A point set failed the quadrature-exactness validation for its declared strength."""
