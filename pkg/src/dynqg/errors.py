"""Exception types raised by the library.

Every error carries a short message; several also carry a ``witness`` with the
offending data so callers can report it.
"""

from __future__ import annotations


class DynqgError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidSpec(DynqgError):
    """Input that cannot describe a valid instance (CLI exit code 2)."""


class EvenOrSmallEll(InvalidSpec):
    pass


class CoprimalityViolation(InvalidSpec):
    pass


class NonGenericLambda(InvalidSpec):
    pass


class UnsupportedType(InvalidSpec):
    pass


class NotInnerProductPreserving(InvalidSpec):
    pass


class EllNotCoprime(InvalidSpec):
    pass


class DivisionByZero(DynqgError, ZeroDivisionError):
    pass


class ZeroQFactorial(DynqgError):
    pass


class NonInvertibleForm(DynqgError):
    pass


class BadSublattice(DynqgError):
    pass


class SingularTorusTensor(DynqgError):
    pass


class DimensionTooLarge(DynqgError):
    pass


class TwistInvalid(DynqgError):
    pass


class BadGauge(DynqgError):
    pass


class NotAGroupoid(DynqgError):
    pass


class SingularZ(DynqgError):
    pass


class NotUnitriangular(DynqgError):
    pass


class RankDeficient(DynqgError):
    pass
