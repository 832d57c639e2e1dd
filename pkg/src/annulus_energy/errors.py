"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid geometry, profile, or run configuration.

    ``field`` names the offending input so front ends can report it.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DomainError(ArithmeticError):
    """An integrand produced a NaN or infinite sample."""

    def __init__(self, message, abscissa=None):
        super().__init__(message)
        self.abscissa = abscissa


class NonConvergence(RuntimeError):
    """An iterative method hit its iteration or subdivision limit.

    The best available estimate and diagnostics travel with the exception.
    """

    def __init__(self, message, estimate=None, error=None, diagnostics=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.diagnostics = dict(diagnostics or {})
