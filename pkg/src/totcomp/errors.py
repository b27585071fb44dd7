"""Exception hierarchy shared by all modules.

InputError covers everything a caller can trigger with bad data; an
InternalCheckError means a mandatory self-check failed and indicates a
bug, never bad input. The CLI maps them to exit codes 1 and 2.
"""


class Error(Exception):
    pass


class InputError(Error):
    pass


class InternalCheckError(Error):
    pass


# poset construction and queries
class BadLabel(InputError):
    pass


class CycleDetected(InputError):
    pass


class NotComparable(InputError):
    pass


class ProjectionBroken(InternalCheckError):
    pass


class TooLarge(InputError):
    pass


# scalars
class ParseError(InputError):
    pass


class NotInField(InputError):
    pass


class DivisionByZero(InputError):
    pass


class NotPrime(InputError):
    pass


# algebra elements and products
class MixedContext(InputError):
    pass


class ChainConflict(InputError):
    pass


class BadMu(InputError):
    pass


class NotCentroid(InputError):
    pass


class NotAutomorphism(InputError):
    pass


class NotAntiautomorphism(InputError):
    pass


class Singular(InputError):
    pass


class DuplicateEntry(InputError):
    pass


# classification
class NotTotallyCompatible(InputError):
    pass


class InternalInconsistency(InternalCheckError):
    pass


class VerificationFailed(InternalCheckError):
    pass


class SelfCheckFailed(InternalCheckError):
    pass


# oracle
class SpanMismatch(InternalCheckError):
    def __init__(self, message, check=None, dims=None, witness=None):
        super().__init__(message)
        self.check = check
        self.dims = dims or {}
        self.witness = witness
