"""Exception hierarchy shared by every module of the package."""


class FarkasBalanceError(Exception):
    """Base class for all errors raised by farkas_balance."""


class NotPrime(FarkasBalanceError, ValueError):
    pass


class ModulusMismatch(FarkasBalanceError, ValueError):
    pass


class LengthMismatch(FarkasBalanceError, ValueError):
    pass


class NonFiniteValue(FarkasBalanceError, ValueError):
    pass


class RangeViolation(FarkasBalanceError, ValueError):
    pass


class SymmetryViolation(FarkasBalanceError, ValueError):
    pass


class PlaceError(FarkasBalanceError, ValueError):
    pass


class ZeroPlace(PlaceError):
    pass


class SignPatternViolation(FarkasBalanceError, ValueError):
    pass


class DisjointnessViolation(FarkasBalanceError, ValueError):
    pass


class EmptyMatrix(FarkasBalanceError, ValueError):
    pass


class TooLarge(FarkasBalanceError, ValueError):
    pass


class NumericalAmbiguity(FarkasBalanceError, ArithmeticError):
    """Neither a hull witness nor a strict separator survives the tolerances."""


class NoStrictSeparation(NumericalAmbiguity):
    pass


class ResidualBlowup(FarkasBalanceError, ArithmeticError):
    pass


class ContainmentViolation(FarkasBalanceError, AssertionError):
    """A sumset containment that holds in exact arithmetic failed (a bug)."""
