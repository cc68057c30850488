"""Exact real-root counting and isolation with Sturm sequences."""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeError
from .series import PowerSeries, poly_divmod, poly_gcd, ps_derivative


def sturm_sequence(p: PowerSeries) -> list[PowerSeries]:
    if not p.is_polynomial or p.degree < 1:
        raise DegreeError("Sturm sequences need a nonconstant exact polynomial")
    seq = [p, ps_derivative(p)]
    while True:
        rem = poly_divmod(seq[-2], seq[-1])[1]
        if rem.degree < 0:
            return seq
        seq.append(-rem)


def _sign_at(s: PowerSeries, x) -> int:
    if x == "-inf" or x == "+inf":
        lead = s.coeffs[s.degree]
        sign = 1 if lead > 0 else -1
        if x == "-inf" and s.degree % 2:
            sign = -sign
        return sign
    v = s.evaluate(x)
    return (v > 0) - (v < 0)


def variations(seq: list[PowerSeries], x) -> int:
    signs = [sg for sg in (_sign_at(s, x) for s in seq) if sg]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: PowerSeries, lo="-inf", hi="+inf", seq=None) -> int:
    """Distinct real roots in (lo, hi]; ``lo`` must not itself be a root."""
    if p.degree < 1:
        return 0
    seq = seq or sturm_sequence(p)
    return variations(seq, lo) - variations(seq, hi)


def squarefree_part(p: PowerSeries) -> PowerSeries:
    if p.degree < 1:
        return p
    return poly_divmod(p, poly_gcd(p, ps_derivative(p)))[0]


def root_bound(p: PowerSeries) -> Fraction:
    """Cauchy bound: every root has |x| < 1 + max |a_i / a_n|."""
    lead = p.coeffs[p.degree]
    return 1 + max(abs(c / lead) for c in p.coeffs[: p.degree])


def isolate_roots(p: PowerSeries) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b], each holding exactly one distinct real root."""
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    b = root_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(p, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def refine(p: PowerSeries, interval, seq=None):
    """Halve an isolating interval, keeping the half that holds the root."""
    lo, hi = interval
    mid = (lo + hi) / 2
    if count_roots(p, lo, mid, seq) == 1:
        return (lo, mid)
    return (mid, hi)


def all_roots_real_negative(p: PowerSeries) -> bool:
    """True when every root of p is real and strictly negative (p(0) != 0)."""
    if p.degree < 1:
        return True
    if p.coeff(0) == 0:
        return False
    sf = squarefree_part(p)
    return count_roots(sf, "-inf", Fraction(0)) == sf.degree


def is_real_simple(p: PowerSeries) -> bool:
    if p.degree < 1:
        return True
    if poly_gcd(p, ps_derivative(p)).degree > 0:
        return False
    return count_roots(p) == p.degree
