"""J-factor factorizations of H(p, q) and the certificates built on them.

A terminated Routh run with positive betas gives

    H(p, q) = J(b0, beta_0) J(1, beta_1) ... J(1, beta_{w-1}) H(1, 1) T(g),   g = p_w,

a product of totally nonnegative factors as soon as T(g) is.  Refutations go
the other way: every negative minor found is recomputed exactly on H(p, q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InsufficientOrder, NormalizationError
from .matrices import (
    HOneOne,
    HurwitzPair,
    JFactor,
    Product,
    RhoNorm,
    Toeplitz,
    _check_rho,
    window,
    window_difference_norm,
)
from .minors import MinorIndex, TnnReport, Witness, minor, part_pos_scan, tnn_scan
from .routh import NEGATIVE_BETA, ZERO_BETA_NONPROPORTIONAL, RouthResult, routh_run
from .series import PowerSeries, as_rational
from .sturm import all_roots_real_negative

CERTIFIED = "certified_tnn"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Budget:
    window: int = 12
    max_order: int = 4
    max_steps: int = 32
    rho: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if min(self.window, self.max_order, self.max_steps) < 1:
            raise ValueError("budgets must be positive")
        if self.max_order > self.window:
            raise ValueError("max_order cannot exceed the window")
        object.__setattr__(self, "rho", _check_rho(self.rho))


@dataclass(frozen=True)
class FactorizationResult:
    b0: Fraction
    betas: tuple[Fraction, ...]
    g: PowerSeries | None
    terminated: bool
    residual: RhoNorm | None
    routh: RouthResult

    @property
    def omega(self):
        return self.routh.omega

    def factors(self, depth: int | None = None) -> tuple:
        """J(b0, beta_0) ... J(1, beta_{d-1}) H(1, 1) T(g), with g = 1 when unknown."""
        betas = self.betas if depth is None else self.betas[:depth]
        if betas:
            js = [JFactor(self.b0, betas[0])] + [JFactor(1, b) for b in betas[1:]]
        else:
            js = [JFactor(self.b0, 0)]
        g = self.g if self.g is not None and depth is None else PowerSeries.constant(1)
        return tuple(js) + (HOneOne(), Toeplitz(g))

    def product(self, depth: int | None = None) -> Product:
        return Product(self.factors(depth))


def _check_pair(p: PowerSeries, q: PowerSeries):
    if p.coeff(0) != 1:
        raise NormalizationError(f"p(0) must be 1, got {p.coeff(0)}")
    if q.coeff(0) < 0:
        raise NormalizationError(f"q(0) = {q.coeff(0)} is negative")


def verify_reconstruction(
    p: PowerSeries, q: PowerSeries, fr: FactorizationResult, n: int, rho=Fraction(1, 2), depth=None
) -> RhoNorm:
    """||H(p, q) - product||_rho on the leading n x n window."""
    target = window(HurwitzPair(p, q), n, n)
    built = window(fr.product(depth), n, n)
    return window_difference_norm(target, built, as_rational(rho))


def factorize(
    p: PowerSeries, q: PowerSeries, max_factors: int = 32, verify_window: int = 12, rho=Fraction(1, 2)
) -> FactorizationResult:
    _check_pair(p, q)
    run = routh_run(p, q, max_factors)
    g = run.terminal
    fr = FactorizationResult(run.b0, run.betas, g, run.terminated, None, run)
    if run.status == NEGATIVE_BETA:
        return fr
    try:
        residual = verify_reconstruction(p, q, fr, verify_window, rho)
    except InsufficientOrder:
        residual = None
    return FactorizationResult(run.b0, run.betas, g, run.terminated, residual, run)


@dataclass(frozen=True)
class TnnCertificate:
    kind: str
    factorization: FactorizationResult | None = None
    toeplitz_scan: TnnReport | None = None
    witness: Witness | None = None
    reason: str = ""
    budget: Budget = field(default_factory=Budget)

    @property
    def certified(self) -> bool:
        return self.kind == CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.kind == REFUTED


def _confirmed(spec, idx: MinorIndex) -> Witness | None:
    try:
        val = minor(spec, idx)
    except InsufficientOrder:
        return None
    return Witness(idx, val) if val < 0 else None


def negative_beta_witness(p: PowerSeries, q: PowerSeries, j: int) -> Witness | None:
    """beta_j < 0 after positive beta_0..beta_{j-1} makes H^{(j+3)} negative."""
    r = tuple(range(2, j + 4))
    return _confirmed(HurwitzPair(p, q), MinorIndex(r, r))


def zero_beta_witness(p, q, run: RouthResult, j: int, budget: Budget) -> Witness | None:
    """Search the partial-positivity pattern of H(p_j, p_{j-1}), then lift it.

    The pattern (k, i) on H_j becomes (k + j, i + j) on H(p, q), multiplied by
    a positive power product of beta_0..beta_{j-1}.
    """
    hj = HurwitzPair(run.p(j), run.p(j - 1))
    k_max = max(2, budget.window - j)
    try:
        rep = part_pos_scan(hj, k_max, k_max + budget.window)
    except InsufficientOrder:
        return None
    if rep.witness is None:
        return None
    rows, cols = rep.witness.index.rows, rep.witness.index.cols
    idx = MinorIndex(_lift_rows(rows, j), _lift_cols(cols, j))
    return _confirmed(HurwitzPair(p, q), idx)


def _lift_rows(rows, j):
    # rows 2..k -> 2..k+j
    return tuple(range(2, len(rows) + 2 + j))


def _lift_cols(cols, j):
    # columns 2..k-1, i -> 2..k+j-1, i+j
    k = len(cols) + 1
    return tuple(range(2, k + j)) + (cols[-1] + j,)


def _toeplitz_witness_in_h(p: PowerSeries, q: PowerSeries, budget: Budget) -> Witness | None:
    """Even rows of H(p, q) are T(p) shifted one column right."""
    try:
        rep = tnn_scan(Toeplitz(p), budget.window, budget.window, budget.max_order)
    except InsufficientOrder:
        return None
    if rep.witness is None:
        return None
    idx = rep.witness.index
    lifted = MinorIndex(tuple(2 * r for r in idx.rows), tuple(c + 1 for c in idx.cols))
    return _confirmed(HurwitzPair(p, q), lifted)


def _window_witness(spec, budget: Budget) -> Witness | None:
    try:
        rep = tnn_scan(spec, budget.window, budget.window, budget.max_order)
    except InsufficientOrder:
        return None
    return rep.witness


def tnn_certificate(p: PowerSeries, q: PowerSeries, budget: Budget | None = None) -> TnnCertificate:
    budget = budget or Budget()
    fr = factorize(p, q, budget.max_steps, budget.window, budget.rho)
    run = fr.routh
    h = HurwitzPair(p, q)

    if run.status == NEGATIVE_BETA:
        w = negative_beta_witness(p, q, run.status_index) or _window_witness(h, budget)
        if w is not None:
            return TnnCertificate(REFUTED, fr, None, w, f"beta_{run.status_index} < 0", budget)
        return TnnCertificate(INCONCLUSIVE, fr, None, None, "negative beta without a located minor", budget)

    if run.status == ZERO_BETA_NONPROPORTIONAL:
        j = run.status_index
        w = zero_beta_witness(p, q, run, j, budget) or _window_witness(h, budget)
        if w is not None:
            return TnnCertificate(REFUTED, fr, None, w, f"beta_{j} = 0 with nonproportional remainder", budget)
        return TnnCertificate(INCONCLUSIVE, fr, None, None, "zero beta; no negative minor inside the budget", budget)

    if not fr.terminated:
        w = _window_witness(h, budget)
        if w is not None:
            return TnnCertificate(REFUTED, fr, None, w, "negative minor inside the window", budget)
        return TnnCertificate(INCONCLUSIVE, fr, None, None, "recurrence did not terminate within budget", budget)

    g = fr.g
    tscan = tnn_scan(Toeplitz(g), budget.window, budget.window, budget.max_order)
    if g.is_polynomial and all_roots_real_negative(g) and tscan.all_nonneg:
        return TnnCertificate(CERTIFIED, fr, tscan, None, "factorization with a Polya frequency polynomial T(g)", budget)
    if g.is_polynomial:
        # g has a root off the negative axis, so p does too and T(p) is not TNN
        w = _toeplitz_witness_in_h(p, q, budget) or _window_witness(h, budget)
        if w is not None:
            return TnnCertificate(REFUTED, fr, tscan, w, "common factor g is not Polya frequency", budget)
        return TnnCertificate(INCONCLUSIVE, fr, tscan, None, "g is not Polya frequency; no minor located", budget)
    w = _window_witness(h, budget)
    if w is not None:
        return TnnCertificate(REFUTED, fr, tscan, w, "negative minor inside the window", budget)
    return TnnCertificate(INCONCLUSIVE, fr, tscan, None, "terminal series is truncated; consistent up to the window", budget)
