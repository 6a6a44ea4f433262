"""Exception hierarchy.

Every error raised by the library derives from :class:`PhiGammaError`.  The
CLI maps the three families below onto distinct exit codes.
"""


class PhiGammaError(Exception):
    """Base class."""


class InputError(PhiGammaError, ValueError):
    """Malformed or inconsistent input (bad field, bad JSON, wrong shape)."""


class PrecisionError(PhiGammaError, ArithmeticError):
    """Not enough provable digits to finish a computation."""


class BudgetError(PhiGammaError, RuntimeError):
    """An iteration budget ran out before the computation settled."""


# series
class DivisionByZero(PrecisionError, ZeroDivisionError):
    pass


class PrecisionExhausted(PrecisionError):
    pass


class InsufficientPadicPrecision(PrecisionError):
    pass


class RamifiedUnsupported(InputError):
    pass


class NotOneUnit(InputError):
    pass


class NotAPower(PhiGammaError):
    pass


# twisted polynomials
class NoBreakpoint(InputError):
    pass


class FactorizationStalled(BudgetError):
    def __init__(self, msg, needed_precision=None):
        super().__init__(msg)
        self.needed_precision = needed_precision


# modules
class NonPrimitiveH(InputError):
    pass


class RankDeficient(PrecisionError):
    pass


class NoConvergence(BudgetError):
    pass


class DegenerateModule(PhiGammaError):
    pass


class NotSurjective(PhiGammaError):
    pass


class NotCyclic(PhiGammaError):
    pass


class ResidualSingular(InputError):
    pass


class NotIsoclinic(PhiGammaError):
    pass


class ValuationNotDivisible(InputError):
    pass


class NotIrreducible(PhiGammaError):
    pass


class RecoveryAmbiguous(PhiGammaError):
    pass


class Inconclusive(PrecisionError):
    pass


# colmez / induction
class InsufficientDepth(PrecisionError):
    def __init__(self, msg, required_headroom=None):
        super().__init__(msg)
        self.required_headroom = required_headroom


class NotSurjectiveAtPrecision(PrecisionError):
    pass


class EmptyOverlap(PhiGammaError):
    pass


class NotUpperTriangular(InputError):
    pass


class NotInvertible(InputError):
    pass


class NotPlusPart(InputError):
    pass


class NotInPositiveMonoid(InputError):
    pass
