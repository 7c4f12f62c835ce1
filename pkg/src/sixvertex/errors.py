"""Exception hierarchy shared by all sixvertex modules."""


class SixVertexError(Exception):
    """Base class for every error raised by this package."""


class ParameterDomainError(SixVertexError, ValueError):
    """Phase parameters violate the inequality defining their domain."""


class PhaseBoundaryError(SixVertexError, ValueError):
    """|Delta| is within tolerance of 1; boundaries are not supported."""


class ResourceLimitError(SixVertexError):
    """Requested enumeration exceeds the configured size limit."""


class NearSingularError(SixVertexError, ArithmeticError):
    """Series reciprocal requested for a symbol with a vanishing constant term."""


class InsufficientPrecisionError(SixVertexError, ArithmeticError):
    """Cancellation consumed too much of the working precision."""

    def __init__(self, message, bits_lost=None, working_bits=None):
        super().__init__(message)
        self.bits_lost = bits_lost
        self.working_bits = working_bits


class TruncationError(SixVertexError, ArithmeticError):
    """A series or sum could not be truncated with a certified tail bound."""


class MomentSequenceError(SixVertexError, ValueError):
    """Moments do not define a positive-definite functional at this precision."""


class UnderflowError(SixVertexError, ArithmeticError):
    """Elliptic nome is too small (or too close to 1) for the theta series."""


class InsufficientDataError(SixVertexError, ValueError):
    """Too few data points for a fit."""
