"""Exact formal power series and polynomials over the rationals.

A :class:`PowerSeries` stores its coefficients in ascending powers together
with the truncation order ``N`` up to which they are known.  Series flagged
``is_polynomial`` are exact: every coefficient past the stored list is zero.
Operations propagate knowledge pessimistically, so a result never claims a
coefficient that its inputs did not determine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegreeError,
    DivisionByNonUnit,
    InsufficientOrder,
    NormalizationError,
    SignError,
    ZeroSeries,
)

Rational = Fraction

INF = float("inf")


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"3/4"`` to a Fraction.

    Floats are rejected: a binary float silently turns 0.1 into a 55-bit
    fraction, which is never what a caller means for exact input.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"float {x!r} is not an exact coefficient; pass a string or Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[Fraction, ...]
    order: int
    is_polynomial: bool = False

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if self.is_polynomial:
            n = len(coeffs)
            while n > 1 and coeffs[n - 1] == 0:
                n -= 1
            coeffs = coeffs[:n] if n else (Fraction(0),)
            object.__setattr__(self, "order", len(coeffs) - 1)
        elif len(coeffs) != self.order + 1:
            raise ValueError(
                f"series of order {self.order} needs {self.order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def poly(cls, coeffs: Iterable) -> "PowerSeries":
        coeffs = tuple(coeffs)
        if not coeffs:
            coeffs = (0,)
        return cls(coeffs, len(coeffs) - 1, True)

    @classmethod
    def series(cls, coeffs: Iterable, order: int | None = None) -> "PowerSeries":
        coeffs = [as_rational(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise InsufficientOrder("a series needs at least its constant term")
        if len(coeffs) < order + 1:
            raise InsufficientOrder(f"{len(coeffs)} coefficients cannot support order {order}")
        return cls(tuple(coeffs[: order + 1]), order, False)

    @classmethod
    def constant(cls, c) -> "PowerSeries":
        return cls.poly([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "PowerSeries":
        return cls.poly([0] * k + [c])

    @property
    def known_order(self) -> float:
        """Largest index with a known coefficient (infinite for polynomials)."""
        return INF if self.is_polynomial else self.order

    @property
    def degree(self) -> int:
        """Degree of an exact polynomial; -1 for the zero polynomial."""
        if not self.is_polynomial:
            raise DegreeError("degree is only defined for exact polynomials")
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k < len(self.coeffs):
            return self.coeffs[k]
        if self.is_polynomial:
            return Fraction(0)
        raise InsufficientOrder(f"coefficient z^{k} unknown (series known to order {self.order})")

    def __getitem__(self, k: int) -> Fraction:
        return self.coeff(k)

    def valuation(self) -> int | None:
        """Index of the first nonzero known coefficient, or None."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, x):
        if not self.is_polynomial:
            raise InsufficientOrder("cannot evaluate a truncated series exactly")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncate(self, n: int) -> "PowerSeries":
        """Forget everything past z^n (the result is never flagged exact)."""
        if n > self.known_order:
            raise InsufficientOrder(f"cannot truncate order-{self.order} series at {n}")
        return PowerSeries.series([self.coeff(k) for k in range(n + 1)], n)

    def shift_down(self, r: int) -> "PowerSeries":
        """Divide by z^r; the first r coefficients must be known zeros."""
        for k in range(r):
            if self.coeff(k) != 0:
                raise DivisionByNonUnit(f"series is not divisible by z^{r}")
        if self.is_polynomial:
            return PowerSeries.poly(self.coeffs[r:] or (0,))
        if self.order - r < 0:
            raise InsufficientOrder("nothing left after dividing by z^r")
        return PowerSeries.series(self.coeffs[r:], self.order - r)

    def scale(self, c) -> "PowerSeries":
        c = as_rational(c)
        return PowerSeries(tuple(c * a for a in self.coeffs), self.order, self.is_polynomial)

    def __add__(self, other):
        return ps_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return ps_add(self, -_coerce(other))

    def __rsub__(self, other):
        return ps_add(_coerce(other), -self)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs)
        tag = "poly" if self.is_polynomial else f"O(z^{self.order + 1})"
        return f"PowerSeries([{terms}], {tag})"


def _coerce(x) -> PowerSeries:
    return x if isinstance(x, PowerSeries) else PowerSeries.constant(x)


def _result_order(*series: PowerSeries) -> float:
    return min(s.known_order for s in series)


def ps_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = _result_order(a, b)
    if n == INF:
        m = max(len(a.coeffs), len(b.coeffs))
        return PowerSeries.poly(a.coeff(k) + b.coeff(k) for k in range(m))
    n = int(n)
    return PowerSeries.series([a.coeff(k) + b.coeff(k) for k in range(n + 1)], n)


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = _result_order(a, b)
    if n == INF:
        out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        return PowerSeries.poly(out)
    n = int(n)
    out = []
    for k in range(n + 1):
        acc = Fraction(0)
        for i in range(k + 1):
            x = a.coeff(i)
            if x:
                acc += x * b.coeff(k - i)
        out.append(acc)
    return PowerSeries.series(out, n)


def ps_div(num: PowerSeries, den: PowerSeries, order: int) -> PowerSeries:
    """Taylor coefficients of num/den through z^order (or less if unknown)."""
    d0 = den.coeff(0)
    if d0 == 0:
        raise DivisionByNonUnit("denominator has zero constant term")
    n = int(min(order, _result_order(num, den)))
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = num.coeff(k)
        for i in range(1, k + 1):
            di = den.coeff(i)
            if di:
                acc -= di * out[k - i]
        out.append(acc / d0)
    return PowerSeries.series(out, n)


def ps_derivative(f: PowerSeries) -> PowerSeries:
    coeffs = [(k + 1) * f.coeffs[k + 1] for k in range(len(f.coeffs) - 1)]
    if f.is_polynomial:
        return PowerSeries.poly(coeffs or [0])
    if f.order < 1:
        raise InsufficientOrder("derivative of an order-0 series has no known coefficient")
    return PowerSeries.series(coeffs, f.order - 1)


def ps_substitute_power(f: PowerSeries, m: int) -> PowerSeries:
    """f(z^m)."""
    out = [Fraction(0)] * (m * (len(f.coeffs) - 1) + 1)
    for k, c in enumerate(f.coeffs):
        out[m * k] = c
    if f.is_polynomial:
        return PowerSeries.poly(out)
    # z^(m*order + m - 1) is still known to vanish
    order = m * f.order + m - 1
    return PowerSeries.series(out + [Fraction(0)] * (order + 1 - len(out)), order)


@dataclass(frozen=True)
class EvenOddSplit:
    """f = f0 * z^j * (q_even(z^2) + z * p_odd(z^2))."""

    j: int
    f0: Fraction
    q_even: PowerSeries
    p_odd: PowerSeries

    def reconstruct(self) -> PowerSeries:
        body = ps_add(
            ps_substitute_power(self.q_even, 2),
            ps_mul(PowerSeries.monomial(1), ps_substitute_power(self.p_odd, 2)),
        )
        return ps_mul(PowerSeries.monomial(self.j, self.f0), body)


def even_odd_split(f: PowerSeries) -> EvenOddSplit:
    j = f.valuation()
    if j is None:
        raise ZeroSeries("series vanishes on all known coefficients")
    f0 = f.coeffs[j]
    if f0 < 0:
        raise SignError(f"leading coefficient {f0} is negative")
    g = f.shift_down(j).scale(1 / f0)
    if g.is_polynomial:
        return EvenOddSplit(
            j, f0, PowerSeries.poly(g.coeffs[0::2]), PowerSeries.poly(g.coeffs[1::2] or (0,))
        )
    m = g.order
    if m < 1:
        raise InsufficientOrder("odd part has no known coefficient")
    return EvenOddSplit(
        j,
        f0,
        PowerSeries.series(g.coeffs[0::2], m // 2),
        PowerSeries.series(g.coeffs[1::2], (m - 1) // 2),
    )


def poly_reverse(p: PowerSeries, n: int) -> PowerSeries:
    """z^n p(1/z) for a polynomial p of degree at most n."""
    if not p.is_polynomial:
        raise DegreeError("reversal needs an exact polynomial")
    if p.degree > n:
        raise DegreeError(f"degree {p.degree} exceeds {n}")
    return PowerSeries.poly(p.coeff(n - k) for k in range(n + 1))


def poly_divmod(a: PowerSeries, b: PowerSeries) -> tuple[PowerSeries, PowerSeries]:
    if not (a.is_polynomial and b.is_polynomial):
        raise DegreeError("polynomial division needs exact polynomials")
    db = b.degree
    if db < 0:
        raise DivisionByNonUnit("division by the zero polynomial")
    rem = list(a.coeffs)
    lead = b.coeffs[db]
    quot = [Fraction(0)] * max(len(rem) - db, 1)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] / lead
        if c:
            quot[k - db] = c
            for i in range(db + 1):
                rem[k - db + i] -= c * b.coeffs[i]
    return PowerSeries.poly(quot), PowerSeries.poly(rem[:db] or [0])


def poly_monic(p: PowerSeries) -> PowerSeries:
    return p.scale(1 / p.coeffs[p.degree])


def poly_gcd(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Monic gcd by the Euclidean algorithm."""
    if not (a.is_polynomial and b.is_polynomial):
        raise DegreeError("gcd needs exact polynomials")
    if a.degree < 0 and b.degree < 0:
        raise ZeroSeries("gcd(0, 0) is undefined")
    while b.degree >= 0:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def normalize_pair(p: PowerSeries, q: PowerSeries) -> tuple[PowerSeries, PowerSeries, Fraction]:
    """Divide (p, q) by p(0) so that p(0) = 1; returns the scalar used."""
    p0 = p.coeff(0)
    if p0 <= 0:
        raise NormalizationError(f"p(0) = {p0} must be positive")
    return p.scale(1 / p0), q.scale(1 / p0), p0


def from_roots_negative(xs: Sequence) -> PowerSeries:
    """prod (1 + z/x) over the given nonzero rationals."""
    out = PowerSeries.constant(1)
    for x in xs:
        out = ps_mul(out, PowerSeries.poly([1, 1 / as_rational(x)]))
    return out
