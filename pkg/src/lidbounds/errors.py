"""Exception types raised by lidbounds.

Argument errors are plain ``ValueError``; the classes below mark failure
modes a caller may want to catch and handle individually.
"""


class FormatError(ValueError):
    """A data file does not match its binary or text format."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class DegenerateDistanceError(ValueError):
    """A neighbor distance is zero (duplicate point)."""


class InfiniteEstimateError(ArithmeticError):
    """All neighbor distances equal r_max, so the MLE diverges."""


class NumericError(ArithmeticError):
    """A numerical routine failed to converge."""


class BandwidthError(ValueError):
    """The KDE bandwidth rule produced a non-positive bandwidth."""


class DegenerateReferenceError(ValueError):
    """The reference point coincides with the benign point."""


class ZeroGradientError(ArithmeticError):
    """The loss gradient vanished, so no attack direction exists."""


class InfeasibleEtaError(ValueError):
    """eta violates delta_x * eta < y."""


class DegenerateGeometryError(ValueError):
    """y equals delta*x, so the log ratio of distances is zero."""


class ZeroProbabilityError(ArithmeticError):
    """A CDF value needed as a denominator is zero."""


class EmptyEtaIntervalError(ValueError):
    """The directional interval (1 - 1/delta, 1/delta - 1) is empty."""


class DomainError(ValueError):
    """A logarithm or ratio argument left its domain."""
