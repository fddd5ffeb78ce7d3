"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (bad arguments or
violated preconditions, CLI exit code 2) and :class:`NumericalError`
(a computation could not meet its tolerance, CLI exit code 3).
"""


class HylabError(Exception):
    """Base class for every error raised by the package."""


class InputError(HylabError, ValueError):
    pass


class NumericalError(HylabError, ArithmeticError):
    pass


# function spaces
class NonIntegrable(InputError):
    pass


class QuadratureFailure(NumericalError):
    pass


# Laplace transform
class DivergentIntegral(InputError):
    pass


class CurveOutsideHalfPlane(InputError):
    pass


class SearchNotConverged(NumericalError):
    pass


# spectral theory
class LinearAlgebraFailure(NumericalError):
    pass


class UnsupportedFunction(InputError):
    pass


class MethodNotApplicable(InputError):
    pass


# well-projected measures
class ZeroDenominator(InputError):
    """Projection denominator vanished while the measure of the set did not."""


class ClassPreconditionViolated(InputError):
    pass


class BudgetExhausted(NumericalError):
    pass


class NonTriadicRectangle(InputError):
    pass


# boundary operators
class EvaluationAtSingularity(InputError):
    pass


class CertificateMissing(InputError):
    pass


class ExponentOutOfRange(InputError):
    pass


# inequality checks
class SectorViolation(InputError):
    pass


class TruncationInsufficient(NumericalError):
    def __init__(self, message, tail_estimate=None):
        super().__init__(message)
        self.tail_estimate = tail_estimate
