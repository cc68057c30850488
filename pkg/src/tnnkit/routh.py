"""The Routh/Stieltjes recurrence on a pair of normalized series.

Starting from ``p_{-1} = q`` and ``p_0 = p`` each step reads off

    beta_j = b_1 - b_0 a_1        (a = p_j, b = p_{j-1})

and divides the remainder ``p_{j-1} - p_{j-1}(0) p_j`` by ``beta_j z``.  The
division consumes one coefficient, so truncated inputs lose one order per step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ChainTooShort, InsufficientOrder, NormalizationError
from .matrices import HurwitzPair
from .minors import MinorIndex, minor, principal_minor_k
from .series import PowerSeries

TERMINATED = "terminated"
BUDGET_EXHAUSTED = "budget_exhausted"
NEGATIVE_BETA = "negative_beta"
ZERO_BETA_NONPROPORTIONAL = "zero_beta_nonproportional"


@dataclass(frozen=True)
class RouthResult:
    b0: Fraction
    betas: tuple[Fraction, ...]
    chain: tuple[PowerSeries, ...]  # q, p, p_1, p_2, ...
    status: str
    status_index: int | None = None
    omega: int | str = "truncated"
    notes: tuple[str, ...] = field(default=())

    @property
    def terminated(self) -> bool:
        return self.status == TERMINATED

    @property
    def status_label(self) -> str:
        if self.status_index is None:
            return self.status
        return f"{self.status}({self.status_index})"

    def p(self, j: int) -> PowerSeries:
        """p_j of the chain, with p_{-1} = q."""
        return self.chain[j + 1]

    @property
    def terminal(self) -> PowerSeries | None:
        """p_omega for terminated runs (the common factor g)."""
        return self.p(self.omega) if self.terminated else None


def _need(s: PowerSeries, k: int):
    if s.known_order < k:
        raise InsufficientOrder(f"step needs z^{k}, series known to order {s.order}")


def _remainder(p_prev: PowerSeries, p_cur: PowerSeries) -> PowerSeries:
    return p_prev - p_cur.scale(p_prev.coeff(0))


def routh_step(p_prev: PowerSeries, p_cur: PowerSeries) -> tuple[Fraction, PowerSeries | None]:
    if p_cur.coeff(0) != 1:
        raise NormalizationError(f"p_j(0) must be 1, got {p_cur.coeff(0)}")
    _need(p_prev, 1)
    _need(p_cur, 1)
    beta = p_prev.coeff(1) - p_prev.coeff(0) * p_cur.coeff(1)
    if beta == 0:
        return beta, None
    return beta, _remainder(p_prev, p_cur).shift_down(1).scale(1 / beta)


def step_beta_minor(p_prev: PowerSeries, p_cur: PowerSeries) -> Fraction:
    """beta_j as the 3rd principal minor of H(p_j, p_{j-1})."""
    return principal_minor_k(HurwitzPair(p_cur, p_prev), 3)


def _check_pair(p: PowerSeries, q: PowerSeries):
    if p.coeff(0) != 1:
        raise NormalizationError(f"p(0) must be 1, got {p.coeff(0)}")
    if q.coeff(0) < 0:
        raise NormalizationError(f"q(0) = {q.coeff(0)} is negative")


def routh_run(p: PowerSeries, q: PowerSeries, max_steps: int = 32) -> RouthResult:
    _check_pair(p, q)
    b0 = q.coeff(0)
    chain = [q, p]
    betas: list[Fraction] = []
    status, index = BUDGET_EXHAUSTED, None
    for j in range(max_steps + 1):
        prev, cur = chain[-2], chain[-1]
        rem = _remainder(prev, cur)
        if rem.is_zero() and (rem.is_polynomial or rem.order >= 1):
            # exact proportionality, or proportional on every known coefficient
            status = TERMINATED
            break
        if j == max_steps:
            break
        try:
            beta, nxt = routh_step(prev, cur)
        except InsufficientOrder:
            break
        if beta == 0:
            status, index = ZERO_BETA_NONPROPORTIONAL, j
            break
        betas.append(beta)
        if beta < 0:
            status, index = NEGATIVE_BETA, j
            break
        chain.append(nxt)
    notes = ()
    if status == TERMINATED and not chain[-1].is_polynomial:
        notes = ("termination judged on known coefficients of a truncated series",)
    omega = len(betas) if status == TERMINATED else "truncated"
    return RouthResult(b0, tuple(betas), tuple(chain), status, index, omega, notes)


def beta_chain(p: PowerSeries, q: PowerSeries, n: int) -> list[Fraction]:
    """beta_0..beta_{n-1}, continuing through negative values.

    After an exact termination the remaining betas are zero.  Any other early
    stop raises :class:`ChainTooShort`.
    """
    _check_pair(p, q)
    prev, cur = q, p
    out: list[Fraction] = []
    while len(out) < n:
        rem = _remainder(prev, cur)
        if rem.is_zero() and (rem.is_polynomial or rem.order >= 1):
            out.extend([Fraction(0)] * (n - len(out)))
            break
        try:
            beta, nxt = routh_step(prev, cur)
        except InsufficientOrder as exc:
            raise ChainTooShort(f"order ran out after {len(out)} steps") from exc
        if beta == 0:
            raise ChainTooShort(f"beta_{len(out)} = 0 with a nonproportional remainder")
        out.append(beta)
        prev, cur = cur, nxt
    return out


def verify_hlpm(p: PowerSeries, q: PowerSeries, k: int, i: int) -> tuple[Fraction, Fraction]:
    """Both sides of the one-step minor shift identity.

    lhs: H(p, q) on rows 2..k+1, cols 2..k and i+1.
    rhs: beta_0^(k//2) times H(p_1, p) on rows 2..k, cols 2..k-1 and i.
    """
    if k < 2 or i < k:
        raise ValueError("need k >= 2 and i >= k")
    _check_pair(p, q)
    beta, p1 = routh_step(q, p)
    if beta == 0:
        raise ChainTooShort("beta_0 = 0")
    lhs = minor(HurwitzPair(p, q), MinorIndex(tuple(range(2, k + 2)), tuple(range(2, k + 1)) + (i + 1,)))
    inner = minor(HurwitzPair(p1, p), MinorIndex(tuple(range(2, k + 1)), tuple(range(2, k)) + (i,)))
    return lhs, beta ** (k // 2) * inner


def minor_product(betas, k: int) -> Fraction:
    """prod_{i=1}^{k-2} beta_{i-1}^floor((k-i)/2)."""
    out = Fraction(1)
    for i in range(1, k - 1):
        out *= betas[i - 1] ** ((k - i) // 2)
    return out


def verify_minor_product(p: PowerSeries, q: PowerSeries, k: int) -> tuple[Fraction, Fraction]:
    if k < 2:
        raise ValueError("k must be at least 2")
    lhs = principal_minor_k(HurwitzPair(p, q), k)
    betas = beta_chain(p, q, max(k - 2, 0))
    return lhs, minor_product(betas, k)
