"""Exception hierarchy.

Input problems derive from :class:`ValueError` so callers that only care about
"bad argument" can catch that; the CLI maps every :class:`SemiarcError` to
exit status 2.
"""


class SemiarcError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SemiarcError, ValueError):
    pass


# field
class NonPrimeCharacteristic(InputError):
    pass


class ReducibleModulus(InputError):
    pass


class OrderDoesNotDivide(InputError):
    pass


class DegreeDoesNotDivide(InputError):
    pass


class DependentBasis(InputError):
    pass


# plane
class MalformedFile(InputError):
    pass


class AxiomViolation(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASubfield(InputError):
    pass


class UnsupportedPlaneKind(InputError):
    pass


# semiarc
class NotASemiarc(InputError):
    pass


class PointInsideSet(InputError):
    pass


# perspective
class IncompatibleParameters(InputError):
    pass


class EmptyLeg(InputError):
    pass


class InconsistentInput(InputError):
    pass


class EmptySelection(InputError):
    pass


# constructions
class EvenOrder(InputError):
    pass


class BadRemovalCount(InputError):
    pass


class CaseConstraintViolated(InputError):
    def __init__(self, rule):
        super().__init__(rule)
        self.rule = rule


class BadASet(InputError):
    pass


class ChainNotNested(InputError):
    pass


class SubfieldTooSmall(InputError):
    pass


class NoFanoSubplane(InputError):
    pass


# search
class InvalidT(InputError):
    pass


class CensusIncomplete(SemiarcError):
    pass
