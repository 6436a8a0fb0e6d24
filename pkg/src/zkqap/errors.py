"""Exception hierarchy shared by every zkqap module."""


class ZkError(Exception):
    """Base class for all library errors."""


# algebra
class ZeroInverse(ZkError, ZeroDivisionError):
    pass


class DivisionByZeroPolynomial(ZkError, ZeroDivisionError):
    pass


class DuplicateAbscissa(ZkError, ValueError):
    pass


class NotPrime(ZkError, ValueError):
    pass


# group
class BackendMismatch(ZkError, ValueError):
    pass


class InsufficientPowers(ZkError, ValueError):
    pass


class TransparencyDisabled(ZkError, PermissionError):
    """Raised when exponent inspection is attempted outside test mode."""


# polynomial protocol
class NotDivisible(ZkError):
    pass


# ceremony
class InvalidPriorTranscript(ZkError):
    pass


class UnverifiedTranscript(ZkError):
    pass


# circuit front-end
class CircuitError(ZkError):
    pass


class ParseError(CircuitError):
    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class DuplicateAssignment(CircuitError):
    pass


class UndefinedVariable(CircuitError):
    pass


class NonQuadratic(CircuitError):
    pass


class WitnessError(ZkError):
    pass


class MissingInput(WitnessError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DivisionByZero(WitnessError, ZeroDivisionError):
    pass


class AssertionFailed(WitnessError):
    pass


# qap / pinocchio
class LengthMismatch(ZkError, ValueError):
    pass


class UnsatisfiedConstraints(ZkError):
    pass


class DegenerateQap(ZkError):
    pass


class PublicCountOutOfRange(ZkError, ValueError):
    pass


class PublicInputLengthMismatch(ZkError, ValueError):
    pass


class AttackFailed(ZkError):
    """A forgery strategy could not be carried out for the given instance."""


# files
class FormatError(ZkError, ValueError):
    """Malformed or incompatible serialized artifact."""
