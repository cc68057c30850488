"""Exception hierarchy shared by every tnnkit module."""


class TnnkitError(Exception):
    """Base class for all library errors."""


class DomainError(TnnkitError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class InsufficientOrder(TnnkitError):
    """A coefficient beyond the known truncation order was requested."""


class DivisionByNonUnit(TnnkitError, ZeroDivisionError):
    """Series division by a denominator with zero constant term."""


class ZeroSeries(DomainError):
    pass


class SignError(DomainError):
    pass


class DegreeError(DomainError):
    pass


class NormalizationError(DomainError):
    """Inputs violate p(0) = 1, q(0) >= 0 (or cannot be normalized to it)."""


class CoprimeError(DomainError):
    pass


class MinorIndexError(TnnkitError, IndexError):
    pass


class EvaluationPole(TnnkitError, ZeroDivisionError):
    pass


class DepthError(TnnkitError):
    pass


class InsufficientDepth(TnnkitError):
    pass


class ChainTooShort(TnnkitError):
    """The Routh chain stopped before the requested number of steps."""
