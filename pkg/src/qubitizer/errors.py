"""Exception hierarchy. Every error raised by the package derives from QubitizerError."""


class QubitizerError(Exception):
    """Base class."""


class NotHermitian(QubitizerError, ValueError):
    pass


class NoConvergence(QubitizerError, RuntimeError):
    pass


class DimMismatch(QubitizerError, ValueError):
    pass


class EmptyString(QubitizerError, ValueError):
    pass


class NotQubitized(QubitizerError, ValueError):
    pass


class UnsupportedString(QubitizerError, ValueError):
    pass


class TooManyQubits(QubitizerError, ValueError):
    pass


class UnknownMacro(QubitizerError, ValueError):
    pass


class OverlappingSupports(QubitizerError, ValueError):
    pass


class AllZeroWeights(QubitizerError, ValueError):
    pass


class RegisterMismatch(QubitizerError, ValueError):
    pass


class NonUnitaryTerm(QubitizerError, ValueError):
    pass


class NotReflection(QubitizerError, ValueError):
    pass


class OutOfRange(QubitizerError, ValueError):
    pass


class InvalidSpec(QubitizerError, ValueError):
    pass


class NotSingleCycle(QubitizerError, ValueError):
    pass


class NotBijective(QubitizerError, ValueError):
    pass


class NotNormalized(QubitizerError, ValueError):
    pass


class BadPartition(QubitizerError, ValueError):
    pass


class TooFewTerms(QubitizerError, ValueError):
    pass


class VerificationFailed(QubitizerError, AssertionError):
    def __init__(self, message, worst=None):
        super().__init__(message)
        self.worst = worst


class ParseError(QubitizerError, ValueError):
    pass
