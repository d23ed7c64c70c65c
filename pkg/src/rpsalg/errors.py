"""Exception hierarchy shared by all modules."""


class RPSAlgebraError(Exception):
    """Base class for every error raised by this package."""


class FieldError(RPSAlgebraError):
    pass


class NotPrime(FieldError):
    pass


class AlreadyHasOmega(FieldError):
    pass


class NoOmega(FieldError):
    pass


class CharThree(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class AlgebraError(RPSAlgebraError):
    pass


class NotApplicable(AlgebraError):
    pass


class NotASubalgebra(AlgebraError):
    pass


class ArityMismatch(RPSAlgebraError):
    pass


class NotMultilinear(RPSAlgebraError):
    pass


class SmallCharacteristic(RPSAlgebraError):
    pass


class CapExceeded(RPSAlgebraError):
    """Raised when an exhaustive sweep would exceed the configured cap.

    ``partial`` holds whatever was computed before giving up, if anything.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(RPSAlgebraError):
    """Malformed input text. ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PolySyntaxError(ParseError):
    pass


class AmbiguousProduct(ParseError):
    pass


class UnknownVariable(ParseError):
    pass


class TheoremViolation(RPSAlgebraError):
    """A computed image contradicts one of the classification theorems.

    This should never happen; when it does the witnesses are attached so the
    offending evaluation can be replayed.
    """

    def __init__(self, message, polynomial=None, algebra=None, witnesses=()):
        super().__init__(message)
        self.polynomial = polynomial
        self.algebra = algebra
        self.witnesses = list(witnesses)
