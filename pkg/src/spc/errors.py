"""Exception taxonomy shared by all modules.

Everything raised on bad input or violated preconditions derives from
SpcError so the CLI can map it to a single input-error exit code.
InternalCheckFailed is deliberately outside that hierarchy: it signals a
broken internal invariant, never a user mistake.
"""


class SpcError(Exception):
    """Base class for all expected engine errors."""


class FieldMismatch(SpcError):
    pass


class DivisionByZero(SpcError, ZeroDivisionError):
    pass


class RingMismatch(SpcError):
    pass


class ArityMismatch(SpcError):
    pass


class DegreeMismatch(SpcError):
    pass


class NotHomogeneous(SpcError):
    pass


class ZeroPolynomial(SpcError):
    pass


class InvalidExponent(SpcError):
    pass


class InvalidParameter(SpcError):
    pass


class CharacteristicMismatch(SpcError):
    pass


class NotRegularSequence(SpcError):
    pass


class UnverifiedMap(SpcError):
    pass


class NotSaturated(SpcError):
    pass


class NotZeroDimensional(SpcError):
    pass


class UnitIdeal(SpcError):
    pass


class UnknownVariable(SpcError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = f" at {position[0]}:{position[1]}" if position else ""
        super().__init__(f"unknown variable {name!r}{where}")


class ParseError(SpcError):
    def __init__(self, message, position=None):
        self.position = position
        where = f" at {position[0]}:{position[1]}" if position else ""
        super().__init__(f"{message}{where}")


class DuplicateName(SpcError):
    pass


class UnknownName(SpcError):
    pass


class InternalCheckFailed(Exception):
    """An internal consistency check failed; this is a bug, not bad input."""
