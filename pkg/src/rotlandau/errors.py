"""Exception types shared across the package."""


class RotlandauError(Exception):
    """Base class for all domain errors raised by this package."""


class ConfigError(RotlandauError):
    """A physical configuration is malformed or violates an invariant.

    The message starts with the offending field name where one can be
    identified, so command-line users see field-level diagnostics.
    """


class NonConfiningChannelError(RotlandauError):
    """The rotating-frame trap frequency is not real: omega**2/4 + Omega*omega <= 0."""


class CoefficientOverflowError(RotlandauError):
    """Series coefficients left the floating-point range during generation."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"coefficient overflow at index {index}")


class SeriesConvergenceError(RotlandauError):
    """A partial sum or quadrature did not converge to the requested tolerance."""

    def __init__(self, message: str, estimate: float | None = None):
        self.estimate = estimate
        super().__init__(message)


class NoAdmissibleRootError(RotlandauError):
    """The truncation polynomial has no root of the sign required by the coupling."""


class NonTerminatedSeriesError(RotlandauError):
    """A wavefunction was requested for a line whose series does not terminate."""


class EigenvalueBracketError(RotlandauError):
    """Sturm-count certification failed to bracket a computed eigenvalue."""


class NoNearbyEigenvalueError(RotlandauError):
    """No numeric eigenvalue lies near the analytic prediction at either resolution.

    Carries the offending report so callers can still inspect the numbers.
    """

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
