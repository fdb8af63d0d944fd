"""
Exception Hierarchy

Every failure raised by the library derives from DrinfeldError so the CLI
can render it as a failed report row.
"""


class DrinfeldError(Exception):
    """Base class for all library errors."""


class DivisionByZero(DrinfeldError, ZeroDivisionError):
    pass


class TowerMismatch(DrinfeldError):
    """Operands live in fields of different characteristic or base q."""


class FieldTooLarge(DrinfeldError):
    pass


class InsufficientData(DrinfeldError):
    pass


class NoMatch(DrinfeldError):
    pass


class ZeroToPrec(DrinfeldError):
    """Value is indistinguishable from zero at its precision cap."""


class WildRamification(DrinfeldError):
    pass


class ResidueFieldTooLarge(DrinfeldError):
    pass


class InsufficientTruncation(DrinfeldError):
    pass


class NonUnitConstantTerm(DrinfeldError):
    pass


class ShapeMismatch(DrinfeldError):
    pass


class LogDivergence(DrinfeldError):
    pass


class TowerDead(DrinfeldError):
    pass


class DependentPeriods(DrinfeldError):
    pass


class InconclusiveBound(DrinfeldError):
    pass


class NotNormalized(DrinfeldError):
    pass


class SingularUpsilon(DrinfeldError):
    pass


class ReconstructFailed(DrinfeldError):
    pass


class BadDivisibility(DrinfeldError):
    pass


class InsufficientPrecision(DrinfeldError):
    pass


class NotExact(DrinfeldError):
    """Operation needs exact polynomial coefficients."""


class ParseError(DrinfeldError, ValueError):
    pass
