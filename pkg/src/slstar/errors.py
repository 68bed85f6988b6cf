"""Exception hierarchy shared by every module of the package."""


class AlgebraError(Exception):
    """Base class for all library errors."""


class ParseError(AlgebraError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if text:
                message += f": {text!r}"
        super().__init__(message)


class DescriptorMismatch(AlgebraError):
    pass


class NotUnit(AlgebraError):
    pass


class InfiniteRing(AlgebraError):
    pass


class Unsupported(AlgebraError):
    pass


class InvalidParameter(AlgebraError):
    pass


class NotCoprime(AlgebraError):
    pass


class SymmetryViolation(AlgebraError):
    pass


class NotSymmetric(AlgebraError):
    pass


class SearchExhausted(AlgebraError):
    pass


class PostconditionViolation(AlgebraError):
    pass


class WrongCharacteristic(AlgebraError):
    pass


class NotStarEuclidean(AlgebraError):
    """Raised when a pair provably admits no division step.

    ``certificate`` carries the exhaustion record when one was produced.
    """

    def __init__(self, message, certificate=None, witness=None):
        super().__init__(message)
        self.certificate = certificate
        self.witness = witness


class HypothesesNotMet(AlgebraError):
    pass


class NotCertified(AlgebraError):
    """An exhaustion certificate was requested but a division step exists."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoUnitEntry(AlgebraError):
    pass


class NotGLStar(AlgebraError):
    pass


class NotSLStar(AlgebraError):
    pass


class VerificationFailed(AlgebraError):
    pass


class CapExceeded(AlgebraError):
    pass


class DecompositionFailed(AlgebraError):
    pass


class TailUnsolved(AlgebraError):
    pass


class UsageError(Exception):
    """Bad command-line usage, such as an unknown experiment name."""
