"""General C-fractions c0 + c1 z^r1 / (1 + c2 z^r2 / (1 + ...)).

``correspond`` expands a series (or an exact rational function) term by term,
``convergents`` rebuilds the truncations as exact polynomial quotients, and
``evaluate`` runs the backward recurrence at a point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DepthError, DomainError, EvaluationPole, InsufficientDepth
from .series import PowerSeries, as_rational, ps_div, ps_mul

EXACT = "exact"
TRUNCATED_CONSTANT = "truncated_constant"
MAX_TERMS = "max_terms"
ORDER_EXHAUSTED = "order_exhausted"


@dataclass(frozen=True)
class CFraction:
    c0: Fraction
    terms: tuple[tuple[Fraction, int], ...] = ()
    terminated: bool = True
    status: str = EXACT

    def __post_init__(self):
        object.__setattr__(self, "c0", as_rational(self.c0))
        terms = []
        for c, r in self.terms:
            c = as_rational(c)
            if c == 0:
                raise DomainError("C-fraction coefficients must be nonzero")
            if int(r) != r or r < 1:
                raise DomainError(f"exponent {r} must be a positive integer")
            terms.append((c, int(r)))
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def regular(cls, b0, betas, terminated: bool = True) -> "CFraction":
        return cls(b0, tuple((b, 1) for b in betas), terminated)

    @property
    def is_regular(self) -> bool:
        return all(r == 1 and c > 0 for c, r in self.terms)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(c for c, _ in self.terms)

    @property
    def depth(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class Convergent:
    numerator: PowerSeries
    denominator: PowerSeries


def _correspond_series(f: PowerSeries, max_terms: int) -> CFraction:
    c0 = f.coeff(0)
    terms = []
    cur = f
    status = MAX_TERMS
    while True:
        if cur.order < 1:
            status = ORDER_EXHAUSTED
            break
        rest = cur - cur.coeff(0)
        r = rest.valuation()
        if r is None:
            status = TRUNCATED_CONSTANT
            break
        if len(terms) == max_terms:
            break
        c = rest.coeff(r)
        terms.append((c, r))
        tail = rest.shift_down(r)
        cur = ps_div(PowerSeries.constant(c), tail, tail.order)
    return CFraction(c0, tuple(terms), status == TRUNCATED_CONSTANT, status)


def correspond_rational(num: PowerSeries, den: PowerSeries, max_terms: int = 64) -> CFraction:
    """Exact expansion of num/den, carried out on numerator/denominator pairs."""
    if not (num.is_polynomial and den.is_polynomial):
        raise DomainError("exact correspondence needs polynomial numerator and denominator")
    if den.coeff(0) == 0:
        raise DomainError("denominator vanishes at the origin")
    n, d = num, den
    c0 = n.coeff(0) / d.coeff(0)
    lead = c0
    terms = []
    while True:
        rest = n - d.scale(lead)
        r = rest.valuation()
        if r is None:
            return CFraction(c0, tuple(terms), True, EXACT)
        if len(terms) == max_terms:
            return CFraction(c0, tuple(terms), False, MAX_TERMS)
        c = rest.coeff(r) / d.coeff(0)
        terms.append((c, r))
        n, d = d.scale(c), rest.shift_down(r)
        lead = n.coeff(0) / d.coeff(0)


def correspond(f: PowerSeries, max_terms: int = 64) -> CFraction:
    """C-fraction corresponding to f.

    Polynomials are expanded exactly.  For truncated series, stopping because
    the remainder is constant on its known coefficients is only a statement
    about those coefficients (status ``truncated_constant``).
    """
    if f.is_polynomial:
        return correspond_rational(f, PowerSeries.constant(1), max_terms)
    return _correspond_series(f, max_terms)


def convergents(cf: CFraction, depth: int | None = None) -> list[Convergent]:
    """Q_j/P_j for j = 0..depth by the three-term recurrence."""
    if depth is None:
        depth = cf.depth
    if depth < 0 or depth > cf.depth:
        raise DepthError(f"depth {depth} outside 0..{cf.depth}")
    q_prev, q = PowerSeries.constant(1), PowerSeries.constant(cf.c0)
    p_prev, p = PowerSeries.constant(0), PowerSeries.constant(1)
    out = [Convergent(q, p)]
    for c, r in cf.terms[:depth]:
        step = PowerSeries.monomial(r, c)
        q_prev, q = q, q + ps_mul(step, q_prev)
        p_prev, p = p, p + ps_mul(step, p_prev)
        out.append(Convergent(q, p))
    return out


def determined_order(cf: CFraction) -> float:
    """Highest coefficient index the fraction pins down."""
    if cf.terminated:
        return float("inf")
    return sum(r for _, r in cf.terms)


def to_series(cf: CFraction, order: int) -> PowerSeries:
    if order > determined_order(cf):
        raise InsufficientDepth(
            f"{cf.depth} terms determine coefficients only through z^{determined_order(cf)}"
        )
    last = convergents(cf)[-1]
    return ps_div(last.numerator, last.denominator, order)


def evaluate(cf: CFraction, z, depth: int | None = None):
    """Backward evaluation of the depth-j truncation at z.

    Exact for Fraction or int z; ordinary floating arithmetic for float or
    complex z.
    """
    if depth is None:
        depth = cf.depth
    if depth < 0 or depth > cf.depth:
        raise DepthError(f"depth {depth} outside 0..{cf.depth}")
    tail = 0
    for c, r in reversed(cf.terms[:depth]):
        den = 1 + tail
        if den == 0:
            raise EvaluationPole(f"zero denominator at z = {z}")
        tail = c * z**r / den
    return cf.c0 + tail


@dataclass(frozen=True)
class WorpitzkyBound:
    radius: Fraction
    tail_max: Fraction
    truncated: bool = True
    note: str = field(default="bound uses only the known tail of the beta sequence")


def worpitzky_radius(betas, j0: int = 0, complete: bool = False) -> WorpitzkyBound:
    """R = 1/(4 max_{j >= j0} beta_j), so that beta_j R <= 1/4 on the tail."""
    tail = [as_rational(b) for b in list(betas)[j0:]]
    if not tail:
        raise DomainError(f"no betas from index {j0}")
    if any(b <= 0 for b in tail):
        raise DomainError("the tail must be strictly positive")
    m = max(tail)
    note = "" if complete else "bound uses only the known tail of the beta sequence"
    return WorpitzkyBound(1 / (4 * m), m, not complete, note)
