"""Exception hierarchy shared across the package."""


class PivarError(Exception):
    """Base class for all package errors."""


# -- field / coefficient errors ------------------------------------------

class NotPrime(PivarError):
    pass


class DegreeOutOfRange(PivarError):
    pass


class CapExceeded(PivarError):
    pass


class DivisionByZero(PivarError):
    pass


class FieldMismatch(PivarError):
    pass


class NotAnExtension(PivarError):
    pass


class PoolMismatch(PivarError):
    pass


class PoolExhausted(PivarError):
    pass


# -- free algebra errors -------------------------------------------------

class CharMismatch(PivarError):
    pass


class BadArity(PivarError):
    pass


class NotHomogeneous(PivarError):
    pass


class MalformedRepresentation(PivarError):
    pass


# -- structure-constant algebra errors -----------------------------------

class NotAssociative(PivarError):
    """Carries the violating basis triple in ``args[1]`` when known."""


class ShapeError(PivarError):
    pass


class InvalidSigma(PivarError):
    pass


class MissingAssignment(PivarError):
    pass


# -- parsing errors -------------------------------------------------------

class ParseError(PivarError):
    """Syntax error in the polynomial / algebra input language.

    ``position`` is the 0-based offset into the source text.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None
                         else f"{message} (at position {position})")
        self.position = position


class UnknownVariableArity(ParseError):
    pass
