"""Function-class predicates decided through Hurwitz-type matrices.

Each predicate returns a :class:`ClassReport`.  ``certified_yes`` is only
issued for exact polynomial data where the finite characterization is
complete; a refutation always carries a minor that recomputes negative on the
matrix named in the report, except for a bare profile break (see
:func:`is_S_profile`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CoprimeError, DomainError, InsufficientOrder, SignError
from .factorization import Budget, TnnCertificate, tnn_certificate
from .matrices import DMatrix, HurwitzF, HurwitzPair, Toeplitz
from .minors import MinorIndex, Witness, minor, principal_minor_k, tnn_scan
from .series import (
    PowerSeries,
    as_rational,
    even_odd_split,
    from_roots_negative,
    normalize_pair,
    ps_derivative,
    ps_div,
    ps_mul,
    poly_gcd,
)
from .routh import _check_pair
from .sturm import all_roots_real_negative, is_real_simple, isolate_roots, refine, sturm_sequence

YES = "certified_yes"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ClassReport:
    predicate: str
    verdict: str
    evidence: str = ""
    witness: Witness | None = None
    matrix: object = None
    minor_profile: tuple[tuple[int, Fraction], ...] | None = None
    omega: int | None = None
    certificate: TnnCertificate | None = None
    intervals: tuple[tuple[Fraction, Fraction, str], ...] = ()  # (lo, hi, which polynomial)

    @property
    def certified(self) -> bool:
        return self.verdict == YES

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED


# ---------------------------------------------------------------- profiles


def _zero_tail_bound(*polys: PowerSeries) -> int | None:
    """For polynomial data every H^{(k)} with k beyond this index vanishes."""
    if not all(s.is_polynomial for s in polys):
        return None
    d = max(max(s.degree, 0) for s in polys)
    return 2 * d + 2


def _profile(spec, ks) -> list[tuple[int, Fraction]]:
    out = []
    for k in ks:
        try:
            out.append((k, principal_minor_k(spec, k)))
        except InsufficientOrder:
            break
    return out


def _judge_profile(name, spec, profile, exact_to, extra_refuter=None) -> ClassReport:
    """Shared verdict policy: positive run, then zeros confirmed up to ``exact_to``."""
    prof = tuple(profile)
    for k, v in prof:
        if v < 0:
            r = tuple(range(2, k + 1))
            return ClassReport(name, REFUTED, f"H^({k}) = {v}", Witness(MinorIndex(r, r), v), spec, prof)
    seen_zero = None
    for k, v in prof:
        if v == 0 and seen_zero is None:
            seen_zero = k
        elif v != 0 and seen_zero is not None:
            w = extra_refuter() if extra_refuter else None
            return ClassReport(
                name, REFUTED, f"H^({seen_zero}) = 0 but H^({k}) != 0", w, spec if w else None, prof
            )
    positives = [k for k, v in prof if v > 0]
    omega = positives[-1] if positives else None
    last = prof[-1][0] if prof else None
    if exact_to is not None and last is not None and last >= exact_to:
        return ClassReport(name, YES, "positive run then zero tail (exact)", None, spec, prof, omega)
    return ClassReport(name, INCONCLUSIVE, "no violation within the computed profile", None, spec, prof, omega)


def _cert_refuter(p, q):
    def find():
        cert = tnn_certificate(p, q)
        return cert.witness

    return find


def is_S_profile(p: PowerSeries, q: PowerSeries, k_max: int = 12) -> ClassReport:
    """Positive leading principal minors H^{(2..w)} followed by zeros."""
    _check_pair(p, q)
    bound = _zero_tail_bound(p, q)
    top = max(k_max, bound + 1) if bound is not None else k_max
    spec = HurwitzPair(p, q)
    prof = _profile(spec, range(2, top + 1))
    return _judge_profile("s", spec, prof, bound + 1 if bound is not None else None, _cert_refuter(p, q))


def is_R_profile(p: PowerSeries, q: PowerSeries, m_max: int = 6) -> ClassReport:
    """Odd principal minors H^{(2m+1)} only."""
    _check_pair(p, q)
    bound = _zero_tail_bound(p, q)
    top = max(m_max, bound // 2) if bound is not None else m_max
    spec = HurwitzPair(p, q)
    prof = _profile(spec, [2 * m + 1 for m in range(1, top + 1)])
    rep = _judge_profile("r", spec, prof, bound + 1 if bound is not None else None)
    if rep.certified:
        l = sum(1 for _, v in prof if v > 0)
        return ClassReport("r", YES, f"{l} positive odd minors then zeros (exact)", None, spec, rep.minor_profile, l)
    return rep


# ------------------------------------------------------------- PF windows


def is_PF_window(f: PowerSeries, n: int = 12, k: int = 4) -> ClassReport:
    if f.coeff(0) <= 0:
        raise SignError(f"f(0) = {f.coeff(0)} must be positive")
    spec = Toeplitz(f)
    rep = tnn_scan(spec, n, n, k)
    if rep.witness is not None:
        return ClassReport("pf", REFUTED, "negative Toeplitz minor", rep.witness, spec)
    if f.is_polynomial:
        if all_roots_real_negative(f):
            return ClassReport("pf", YES, f"window {n}x{n} order {k} clean; all roots real and negative", None, spec)
        return ClassReport(
            "pf", INCONCLUSIVE, f"window {n}x{n} order {k} clean, but f has roots off the negative axis", None, spec
        )
    return ClassReport("pf", INCONCLUSIVE, f"window {n}x{n} order {k} clean on a truncated series", None, spec)


# ------------------------------------------------- Hurwitz-type generators


def _lead_sign(f: PowerSeries):
    v = f.valuation()
    if v is None:
        raise DomainError("series vanishes on all known coefficients")
    if f.coeffs[v] <= 0:
        raise SignError(f"lowest nonzero coefficient {f.coeffs[v]} must be positive")


def _recheck(spec, w: Witness | None) -> Witness | None:
    if w is None:
        return None
    val = minor(spec, w.index)
    return Witness(w.index, val) if val < 0 else None


def _from_certificate(name, cert: TnnCertificate, spec) -> ClassReport:
    if cert.certified:
        return ClassReport(name, YES, cert.reason, None, spec, certificate=cert)
    if cert.refuted:
        w = _recheck(spec, cert.witness)
        if w is not None:
            return ClassReport(name, REFUTED, cert.reason, w, spec, certificate=cert)
    return ClassReport(name, INCONCLUSIVE, cert.reason, None, spec, certificate=cert)


def _vanishing_head_witness(a: PowerSeries) -> MinorIndex | None:
    """a(0) = 0 but a != 0: the first nonzero a_i gives a negative minor.

    a_i < 0 sits alone at (2, i+2); otherwise rows {2,3}, cols {2, i+2} give
    a_0 b_i - a_i b_0 = -a_i b_0.
    """
    i = a.valuation()
    if i is None:
        return None
    if a.coeff(i) < 0:
        return MinorIndex((2,), (i + 2,))
    return MinorIndex((2, 3), (2, i + 2))


def _degenerate_branch(name, spec, a: PowerSeries, b: PowerSeries, budget: Budget) -> ClassReport:
    """The row series a has a(0) = 0 in H(a, b) (up to a positive factor)."""
    idx = _vanishing_head_witness(a)
    if idx is not None:
        w = _recheck(spec, Witness(idx, Fraction(0)))
        if w is not None:
            return ClassReport(name, REFUTED, "vanishing head with a later nonzero coefficient", w, spec)
        return ClassReport(name, INCONCLUSIVE, "vanishing head; expected witness not negative", None, spec)
    # H(0, b) is TNN exactly when T(b) is: odd rows are T(b) verbatim
    rep = tnn_scan(Toeplitz(b), budget.window, budget.window, budget.max_order)
    if rep.witness is not None:
        t = rep.witness.index
        lifted = MinorIndex(tuple(2 * r - 1 for r in t.rows), t.cols)
        w = _recheck(spec, Witness(lifted, rep.witness.value))
        if w is not None:
            return ClassReport(name, REFUTED, "remaining factor is not Polya frequency", w, spec)
    if b.is_polynomial and a.is_polynomial and all_roots_real_negative(b) and rep.all_nonneg:
        return ClassReport(name, YES, "odd part vanishes; even part has only real negative roots", None, spec)
    return ClassReport(name, INCONCLUSIVE, "odd part vanishes; even part not certified", None, spec)


def quasi_stable_check(f: PowerSeries, budget: Budget | None = None) -> ClassReport:
    budget = budget or Budget()
    _lead_sign(f)
    spec = HurwitzF(f)
    split = even_odd_split(f)
    a, b = split.p_odd, split.q_even
    f1 = a.coeff(0)
    if f1 < 0:
        w = Witness(MinorIndex((2,), (2,)), minor(spec, MinorIndex((2,), (2,))))
        return ClassReport("quasi-stable", REFUTED, "negative coefficient next to the lowest one", w, spec)
    if f1 == 0:
        return _degenerate_branch("quasi-stable", spec, a, b, budget)
    p, q, _ = normalize_pair(a, b)
    return _from_certificate("quasi-stable", tnn_certificate(p, q, budget), spec)


def entire_neg_zeros_check(f: PowerSeries, budget: Budget | None = None) -> ClassReport:
    budget = budget or Budget()
    if f.coeff(0) <= 0:
        raise SignError(f"f(0) = {f.coeff(0)} must be positive")
    spec = DMatrix(f)
    d = ps_derivative(f) if f.order >= 1 or f.is_polynomial else None
    if d is None:
        return ClassReport("neg-zeros", INCONCLUSIVE, "no coefficient beyond f(0) known", None, spec)
    f1 = d.coeff(0)
    if f1 < 0:
        w = Witness(MinorIndex((2,), (2,)), f1)
        return ClassReport("neg-zeros", REFUTED, "f'(0) < 0", w, spec)
    if f1 == 0:
        if d.is_zero():
            if f.is_polynomial:
                return ClassReport("neg-zeros", YES, "f is a positive constant", None, spec)
            return ClassReport("neg-zeros", INCONCLUSIVE, "constant on known coefficients", None, spec)
        return _degenerate_branch("neg-zeros", spec, d, f, budget)
    p, q, _ = normalize_pair(d, f)
    return _from_certificate("neg-zeros", tnn_certificate(p, q, budget), spec)


def hurwitz_profile(f: PowerSeries, k_max: int = 12) -> ClassReport:
    """Run-length of positive principal minors of the Hurwitz matrix of f."""
    if not f.is_polynomial:
        raise DomainError("the Hurwitz profile needs an exact polynomial")
    _lead_sign(f)
    split = even_odd_split(f)
    spec = HurwitzF(f)
    bound = _zero_tail_bound(split.p_odd, split.q_even)
    prof = _profile(spec, range(2, max(k_max, bound + 1) + 1))
    if split.p_odd.degree < 0:
        return ClassReport(
            "hurwitz-profile", INCONCLUSIVE, "hypothesis violated: odd part vanishes", None, spec, tuple(prof)
        )
    common = poly_gcd(split.q_even, split.p_odd)
    rep = _judge_profile("hurwitz-profile", spec, prof, bound + 1, lambda: quasi_stable_check(f).witness)
    if common.degree > 0 and not rep.refuted:
        return ClassReport(
            "hurwitz-profile",
            INCONCLUSIVE,
            f"hypothesis violated: even and odd parts share the factor {list(map(str, common.coeffs))}",
            None,
            spec,
            rep.minor_profile,
            rep.omega,
        )
    return rep


# ------------------------------------------------------------ interlacing


def _disjoint_intervals(p, q):
    sp, sq = sturm_sequence(p), sturm_sequence(q)
    ip, iq = isolate_roots(p), isolate_roots(q)
    while True:
        clash = None
        for a in range(len(ip)):
            for b in range(len(iq)):
                (l1, h1), (l2, h2) = ip[a], iq[b]
                if l1 < h2 and l2 < h1:
                    clash = (a, b)
                    break
            if clash:
                break
        if clash is None:
            return ip, iq
        a, b = clash
        ip[a] = refine(p, ip[a], sp)
        iq[b] = refine(q, iq[b], sq)


def interlacing_check(p: PowerSeries, q: PowerSeries) -> ClassReport:
    """Real, simple and strictly alternating zeros of p and q, decided by Sturm counts."""
    if not (p.is_polynomial and q.is_polynomial):
        raise DomainError("interlacing needs exact polynomials")
    if p.degree >= 0 and q.degree >= 0 and poly_gcd(p, q).degree > 0:
        raise CoprimeError("p and q share a root")
    for name, s in (("p", p), ("q", q)):
        if not is_real_simple(s):
            return ClassReport("interlacing", REFUTED, f"{name} has a multiple or non-real root")
    if p.degree < 1 or q.degree < 1:
        return ClassReport("interlacing", YES, "at most one root in total")
    ip, iq = _disjoint_intervals(p, q)
    tagged = sorted([(iv, "p") for iv in ip] + [(iv, "q") for iv in iq])
    for (iv1, t1), (iv2, t2) in zip(tagged, tagged[1:]):
        if t1 == t2:
            lo, hi = iv1[0], iv2[1]
            return ClassReport(
                "interlacing",
                REFUTED,
                f"two roots of {t1} in ({lo}, {hi}] with no root of the other between",
                intervals=((lo, hi, t1),),
            )
    return ClassReport(
        "interlacing", YES, "roots alternate", intervals=tuple((lo, hi, t) for (lo, hi), t in tagged)
    )


# --------------------------------------------------------------- fixtures


@dataclass(frozen=True)
class SPoleData:
    """B0 + B1 z + sum A/(z + sigma) - A/sigma with A < 0, sigma > 0."""

    B0: Fraction
    B1: Fraction
    poles: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        b0, b1 = as_rational(self.B0), as_rational(self.B1)
        poles = tuple((as_rational(a), as_rational(s)) for a, s in self.poles)
        if b0 < 0 or b1 < 0:
            raise DomainError("B0 and B1 must be nonnegative")
        if any(a >= 0 or s <= 0 for a, s in poles):
            raise DomainError("poles need A < 0 and sigma > 0")
        if len({s for _, s in poles}) != len(poles):
            raise DomainError("pole locations must be distinct")
        object.__setattr__(self, "B0", b0)
        object.__setattr__(self, "B1", b1)
        object.__setattr__(self, "poles", poles)

    @property
    def pole_count(self) -> int:
        """Finite poles, plus the one at infinity when B1 > 0."""
        return len(self.poles) + (1 if self.B1 > 0 else 0)


def s_from_poles(data: SPoleData) -> tuple[PowerSeries, PowerSeries]:
    """(p, q) with p(0) = 1 and q/p the rational function described by data."""
    sigmas = [s for _, s in data.poles]
    p = from_roots_negative(sigmas)
    q = ps_mul(PowerSeries.poly([data.B0, data.B1]), p)
    for n, (a, s) in enumerate(data.poles):
        others = from_roots_negative(sigmas[:n] + sigmas[n + 1 :])
        q = q + ps_mul(PowerSeries.monomial(1, -a / (s * s)), others)
    return p, q


@dataclass(frozen=True)
class ZeroPoleSpec:
    C: Fraction = Fraction(1)
    gamma1: Fraction = Fraction(0)
    gamma2: Fraction = Fraction(0)
    j: int = 0
    neg_zeros: tuple[Fraction, ...] = ()
    complex_pairs: tuple[tuple[Fraction, Fraction], ...] = ()
    sym_pole_pairs: tuple[Fraction, ...] = ()
    pos_poles: tuple[Fraction, ...] = ()
    neg_zeros_simple: tuple[Fraction, ...] = ()

    def __post_init__(self):
        conv = lambda xs: tuple(as_rational(x) for x in xs)  # noqa: E731
        c, g1, g2 = as_rational(self.C), as_rational(self.gamma1), as_rational(self.gamma2)
        if c <= 0 or g1 < 0 or g2 < 0 or self.j < 0:
            raise DomainError("need C > 0, gamma1, gamma2 >= 0 and j >= 0")
        pairs = tuple((as_rational(re), as_rational(im)) for re, im in self.complex_pairs)
        lists = [conv(self.neg_zeros), conv(self.sym_pole_pairs), conv(self.pos_poles), conv(self.neg_zeros_simple)]
        if any(x <= 0 for xs in lists for x in xs):
            raise DomainError("zero and pole locations must be positive")
        if any(re < 0 or im <= 0 for re, im in pairs):
            raise DomainError("complex pairs need Re >= 0 and Im > 0")
        for name, val in zip(("C", "gamma1", "gamma2"), (c, g1, g2)):
            object.__setattr__(self, name, val)
        object.__setattr__(self, "complex_pairs", pairs)
        for name, xs in zip(("neg_zeros", "sym_pole_pairs", "pos_poles", "neg_zeros_simple"), lists):
            object.__setattr__(self, name, xs)


def _pair_factor(re: Fraction, im: Fraction) -> PowerSeries:
    # (1 + z/a)(1 + z/conj a) = 1 + 2 Re(a)/|a|^2 z + z^2/|a|^2
    n = re * re + im * im
    return PowerSeries.poly([1, 2 * re / n, 1 / n])


def _exp_series(g1: Fraction, g2: Fraction, order: int) -> PowerSeries:
    e = [Fraction(1)]
    for k in range(order):
        nxt = g1 * e[k] + (2 * g2 * e[k - 1] if k >= 1 else 0)
        e.append(nxt / (k + 1))
    return PowerSeries.series(e, order)


def fixture_from_form(spec: ZeroPoleSpec, order: int = 16) -> PowerSeries:
    """Taylor data of the product form; exact polynomial when nothing is transcendental."""
    zeros = list(spec.neg_zeros) + list(spec.neg_zeros_simple)
    poles = list(spec.sym_pole_pairs)
    for y in list(poles):
        if y in zeros:
            zeros.remove(y)
            poles.remove(y)
    num = from_roots_negative(zeros)
    for re, im in spec.complex_pairs:
        num = ps_mul(num, _pair_factor(re, im))
    den = PowerSeries.constant(1)
    for y in poles:
        den = ps_mul(den, PowerSeries.poly([1, 0, -1 / (y * y)]))
    # a cancelled pair keeps its positive pole (1 - z/y) in the denominator
    for y in _removed(spec.sym_pole_pairs, poles):
        den = ps_mul(den, PowerSeries.poly([1, -1 / y]))
    for b in spec.pos_poles:
        den = ps_mul(den, PowerSeries.poly([1, -1 / b]))
    head = PowerSeries.monomial(spec.j, spec.C)
    if spec.gamma1 == 0 and spec.gamma2 == 0 and den.degree == 0:
        return ps_mul(head, num)
    body_order = order - spec.j
    if body_order < 0:
        raise InsufficientOrder(f"order {order} is below the zero of order {spec.j} at the origin")
    body = ps_div(num, den, body_order)
    if spec.gamma1 or spec.gamma2:
        body = ps_mul(body, _exp_series(spec.gamma1, spec.gamma2, body_order))
    shifted = [Fraction(0)] * spec.j + [spec.C * c for c in body.coeffs]
    return PowerSeries.series(shifted, order)


def _removed(full, kept) -> list:
    rest = list(kept)
    out = []
    for y in full:
        if y in rest:
            rest.remove(y)
        else:
            out.append(y)
    return out
