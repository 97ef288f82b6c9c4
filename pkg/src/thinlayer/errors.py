"""Exception types shared by the solvers and the command line front end."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ResonanceError(ArithmeticError):
    """A per-mode system is singular or numerically too close to singular.

    Raised when the angular frequency sits on (or next to) an eigenfrequency
    of the traction-free elastic ball, or when an equivalent-condition
    problem loses well-posedness at the requested thickness.
    """

    def __init__(self, message, degree=None, measure=None):
        super().__init__(message)
        self.degree = degree
        self.measure = measure


class NumericalError(ArithmeticError):
    """Condition estimate overflow or another loss of numerical meaning."""


class ConfigError(ValueError):
    """Invalid sweep configuration."""
