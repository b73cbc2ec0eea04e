"""Exception types shared across the package."""


class ChiralNlsError(Exception):
    """Base class for all package-specific errors."""


class NonFiniteInput(ChiralNlsError, ValueError):
    """A field or parameter contains NaN or Inf."""


class SingularCoefficient(ChiralNlsError, ValueError):
    """A time-dependent coefficient was evaluated too close to its pole."""


class BoundaryLeak(ChiralNlsError, RuntimeError):
    """Field amplitude at the grid edges exceeds the decay gate.

    The periodic box only approximates the infinite line while the field is
    negligible at the seam; once that fails, results are untrustworthy.
    """


class BlowUp(ChiralNlsError, RuntimeError):
    """Field amplitude exceeded the blow-up guard during time evolution."""


class ChiralityViolation(ChiralNlsError, ValueError):
    """Travelling-soliton velocity must be positive."""


class WidthViolation(ChiralNlsError, ValueError):
    """Soliton inverse width is imaginary: requires v**2 - 2*omega > 0."""


class DegenerateVelocity(ChiralNlsError, ValueError):
    """The quintic-extension travelling wave needs v != 0."""


class InvalidTime(ChiralNlsError, ValueError):
    """Evaluation time lies outside a solution's validity domain."""


class SingularMapPoint(ChiralNlsError, ValueError):
    """A solution map was evaluated on (or too close to) its singular set."""


class InsufficientRecords(ChiralNlsError, ValueError):
    """A trajectory diagnostic needs more recorded time levels."""


class UnknownClaim(ChiralNlsError, KeyError):
    """The verification registry has no claim with the requested name."""
