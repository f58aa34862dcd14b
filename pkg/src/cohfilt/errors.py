"""Exception hierarchy. Every error is a ``ValueError`` subclass."""


class CoherenceError(ValueError):
    """Base class for all library errors."""


class ParseError(CoherenceError):
    pass


class DimensionMismatch(CoherenceError):
    pass


class InvalidDimension(CoherenceError):
    pass


class InvalidRank(CoherenceError):
    pass


class NoConvergence(CoherenceError):
    pass


class ValidationError(CoherenceError):
    """A matrix failed a state or operator validity check."""


class NotHermitian(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class NotStrictlyIncoherent(ValidationError):
    def __init__(self, message, index=None, axis=None):
        super().__init__(message)
        self.index = index
        self.axis = axis


class NotSubnormalized(ValidationError):
    pass


class ZeroProbability(CoherenceError):
    pass


class ZeroWeight(CoherenceError):
    pass


class DegenerateDiagonal(CoherenceError):
    pass


class DegenerateKraus(CoherenceError):
    pass


class InfeasibleAtUpperBound(CoherenceError):
    pass


class DimensionTooLarge(CoherenceError):
    pass


class LengthMismatch(CoherenceError):
    pass


class NonPositiveEntry(CoherenceError):
    pass
