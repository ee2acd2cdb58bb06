"""Exception hierarchy shared by every module of the package.

Two families matter to callers: :class:`InputError` (malformed or
incompatible input, CLI exit status 2) and :class:`MathError` (a well-formed
request whose answer does not exist, CLI exit status 1).
"""


class LocsingError(Exception):
    """Base class for all package errors."""


class InputError(LocsingError):
    pass


class MathError(LocsingError):
    pass


# coefficient fields
class DivisionByZero(MathError, ZeroDivisionError):
    pass


class FieldMismatch(InputError, TypeError):
    pass


class NotPrime(InputError, ValueError):
    pass


class SpecializationError(MathError):
    """A coefficient has no image in the requested residue field."""


class BadPrime(SpecializationError):
    """The prime divides a denominator, so reduction mod p is undefined."""


class BadPoint(SpecializationError):
    """A parameter value is a pole of some coefficient."""


# polynomials
class PolynomialSyntaxError(InputError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariable(PolynomialSyntaxError):
    pass


class DivisionNotAllowed(PolynomialSyntaxError):
    pass


class RingMismatch(InputError, TypeError):
    pass


class LengthMismatch(InputError, ValueError):
    pass


class RankMismatch(InputError, ValueError):
    pass


class SizeTooLarge(InputError, ValueError):
    pass


class TooManyVariables(InputError, ValueError):
    pass


# standard bases / invariants
class ResourceExhausted(MathError):
    """The reduction-step budget ran out before the computation finished."""


class ZeroIdeal(MathError):
    pass


class EmptyGeneratorList(InputError, ValueError):
    pass


class NotFinitelyDetermined(MathError):
    pass


class ImproperIdeal(MathError):
    pass


class NotCompleteIntersection(MathError):
    pass


class FamilyFormatError(InputError):
    pass


class IncompatiblePoint(InputError):
    """A fibre point that does not belong to the family's base ring."""
