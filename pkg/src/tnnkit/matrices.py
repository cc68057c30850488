"""Lazy infinite structured matrices and their finite windows.

Every matrix here is indexed from 1 and is "column bounded": column ``c`` can
only hold nonzero entries in rows ``<= col_support(spec, c)``.  That bound is
what makes windows of infinite products computable exactly: an ``n x m``
window of ``A @ B`` only needs the first ``col_support(B, m)`` columns of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError
from .series import PowerSeries, as_rational, even_odd_split, ps_derivative


@dataclass(frozen=True)
class HurwitzPair:
    """H(p, q): odd rows carry q, even rows carry p, shifted right every two rows."""

    p: PowerSeries
    q: PowerSeries


@dataclass(frozen=True)
class Toeplitz:
    f: PowerSeries


@dataclass(frozen=True)
class HurwitzF:
    """The Hurwitz matrix of f, i.e. f0 * H(p_odd, q_even) of the even/odd split."""

    f: PowerSeries


@dataclass(frozen=True)
class DMatrix:
    """H(f', f)."""

    f: PowerSeries


@dataclass(frozen=True)
class JFactor:
    c: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "beta", as_rational(self.beta))


@dataclass(frozen=True)
class HOneOne:
    pass


@dataclass(frozen=True)
class DiagTrim:
    """diag(1, beta, 1, beta, ...)."""

    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", as_rational(self.beta))


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise DomainError("empty product")
        object.__setattr__(self, "factors", tuple(self.factors))


MatrixSpec = Union[HurwitzPair, Toeplitz, HurwitzF, DMatrix, JFactor, HOneOne, DiagTrim, Product]


@dataclass(frozen=True)
class Window:
    n_rows: int
    n_cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    def sub(self, rows, cols) -> list[list[Fraction]]:
        return [[self.entries[i - 1][j - 1] for j in cols] for i in rows]


@dataclass(frozen=True)
class RhoNorm:
    rho: Fraction
    value: Fraction
    cols_used: int
    truncated: bool
    closed_value: Fraction | None = None


def _as_pair(spec) -> HurwitzPair | None:
    """Rewrite the Hurwitz-family variants as the underlying H(p, q)."""
    if isinstance(spec, HurwitzPair):
        return spec
    if isinstance(spec, HOneOne):
        one = PowerSeries.constant(1)
        return HurwitzPair(one, one)
    if isinstance(spec, DMatrix):
        return HurwitzPair(_derivative(spec.f), spec.f)
    return None


_derivative = lru_cache(maxsize=256)(ps_derivative)


def _hurwitz_f_coeff(f: PowerSeries, k: int) -> Fraction:
    # coefficients of z^-j f(z); the zero at the origin is dropped
    j = f.valuation() or 0
    return f.coeff(j + k)


def entry(spec: MatrixSpec, i: int, j: int) -> Fraction:
    if i < 1 or j < 1:
        raise DomainError(f"matrix indices start at 1, got ({i}, {j})")
    if isinstance(spec, HurwitzF):
        m, odd = divmod(i, 2)
        if odd:  # row 2m+1: f0, f2, f4, ... shifted by m
            k = j - m - 1
            return _hurwitz_f_coeff(spec.f, 2 * k) if k >= 0 else Fraction(0)
        k = j - m - 1
        return _hurwitz_f_coeff(spec.f, 2 * k + 1) if k >= 0 else Fraction(0)
    pair = _as_pair(spec)
    if pair is not None:
        m, odd = divmod(i, 2)
        k = j - m - 1
        if k < 0:
            return Fraction(0)
        return pair.q.coeff(k) if odd else pair.p.coeff(k)
    if isinstance(spec, Toeplitz):
        return spec.f.coeff(j - i) if j >= i else Fraction(0)
    if isinstance(spec, JFactor):
        if i % 2:
            if j == i:
                return spec.c
            if j == i + 1:
                return spec.beta
            return Fraction(0)
        return Fraction(1) if j == i + 1 else Fraction(0)
    if isinstance(spec, DiagTrim):
        if i != j:
            return Fraction(0)
        return Fraction(1) if i % 2 else spec.beta
    if isinstance(spec, Product):
        return window(spec, i, j).entries[i - 1][j - 1]
    raise TypeError(f"not a matrix spec: {spec!r}")


def col_support(spec: MatrixSpec, c: int) -> int:
    """Largest row index that may hold a nonzero entry in columns 1..c."""
    if isinstance(spec, (HurwitzPair, HurwitzF, DMatrix, HOneOne)):
        return max(2 * c - 1, 1)
    if isinstance(spec, (Toeplitz, JFactor, DiagTrim)):
        return c
    if isinstance(spec, Product):
        for factor in reversed(spec.factors):
            c = col_support(factor, c)
        return c
    raise TypeError(f"not a matrix spec: {spec!r}")


def _matmul(a, b):
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for l in range(inner):
            x = row[l]
            if x:
                brow = b[l]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def _dense(spec, n_rows: int, n_cols: int, pad: int = 0):
    if isinstance(spec, Product):
        # right to left: each factor only needs the rows the next one can reach
        cols = n_cols
        grids = []
        factors = spec.factors
        for idx in range(len(factors) - 1, 0, -1):
            rows = col_support(factors[idx], cols) + pad
            grids.append(_dense(factors[idx], rows, cols, pad))
            cols = rows
        acc = _dense(factors[0], n_rows, cols, pad)
        for g in reversed(grids):
            acc = _matmul(acc, g)
        return acc
    return [[entry(spec, i, j) for j in range(1, n_cols + 1)] for i in range(1, n_rows + 1)]


def window(spec: MatrixSpec, n_rows: int, n_cols: int, pad: int = 0) -> Window:
    """Exact n_rows x n_cols top-left block.

    For products the inner dimensions come from :func:`col_support`; ``pad``
    enlarges them further, which must leave the result unchanged.
    """
    if n_rows < 1 or n_cols < 1:
        raise DomainError("window dimensions must be positive")
    grid = _dense(spec, n_rows, n_cols, pad)
    return Window(n_rows, n_cols, tuple(tuple(r) for r in grid))


def row_extent(spec: MatrixSpec, i: int) -> int | None:
    """Last column that may be nonzero in row i; None when unbounded."""
    if isinstance(spec, HurwitzF):
        split = _split_or_none(spec.f)
        if split is None:
            return 0
        return row_extent(HurwitzPair(split.p_odd, split.q_even), i)
    pair = _as_pair(spec)
    if pair is not None:
        m, odd = divmod(i, 2)
        s = pair.q if odd else pair.p
        if not s.is_polynomial:
            return None
        return m + 1 + max(s.degree, 0)
    if isinstance(spec, Toeplitz):
        return i + max(spec.f.degree, 0) if spec.f.is_polynomial else None
    if isinstance(spec, JFactor):
        return i + 1
    if isinstance(spec, DiagTrim):
        return i
    if isinstance(spec, Product):
        rows = [i]
        for factor in spec.factors:
            ext = [row_extent(factor, r) for r in rows]
            if any(e is None for e in ext):
                return None
            reach = max(ext)
            rows = range(1, reach + 1)
        return reach
    raise TypeError(f"not a matrix spec: {spec!r}")


def _split_or_none(f: PowerSeries):
    if f.valuation() is None:
        return None
    lead = f.coeffs[f.valuation()]
    g = f if lead > 0 else f.scale(-1)
    return even_odd_split(g)


def grid_norm(rows, rho) -> Fraction:
    """max_i sum_j rho^(j-1) |a_ij| over a dense grid."""
    rho = as_rational(rho)
    best = Fraction(0)
    for row in rows:
        acc = Fraction(0)
        w = Fraction(1)
        for x in row:
            if x:
                acc += w * abs(x)
            w *= rho
        if acc > best:
            best = acc
    return best


def _check_rho(rho) -> Fraction:
    rho = as_rational(rho)
    if not 0 < rho <= 1:
        raise DomainError(f"rho must lie in (0, 1], got {rho}")
    return rho


def norm_rho(spec: MatrixSpec, rho, n_rows: int, n_cols: int) -> RhoNorm:
    rho = _check_rho(rho)
    w = window(spec, n_rows, n_cols)
    truncated = False
    for i in range(1, n_rows + 1):
        ext = row_extent(spec, i)
        if ext is None or ext > n_cols:
            truncated = True
            break
    closed = None
    if isinstance(spec, Toeplitz) and spec.f.is_polynomial and all(c >= 0 for c in spec.f.coeffs):
        closed = spec.f.evaluate(rho)
    return RhoNorm(rho, grid_norm(w.entries, rho), n_cols, truncated, closed)


def window_difference_norm(a: Window, b: Window, rho, truncated: bool = True) -> RhoNorm:
    rho = _check_rho(rho)
    if (a.n_rows, a.n_cols) != (b.n_rows, b.n_cols):
        raise DomainError("window shapes differ")
    diff = [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)]
    return RhoNorm(rho, grid_norm(diff, rho), a.n_cols, truncated)
