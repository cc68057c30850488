"""Property tests over random exact inputs."""

from fractions import Fraction as F

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from oracles import cofactor_det, poly_mul, series_quotient
from tnnkit import codec
from tnnkit.cfrac import CFraction, correspond, determined_order, to_series
from tnnkit.classify import SPoleData, s_from_poles
from tnnkit.factorization import factorize, verify_reconstruction
from tnnkit.matrices import HurwitzPair, Toeplitz, window
from tnnkit.minors import MinorIndex, minor
from tnnkit.routh import routh_run, verify_hlpm, verify_minor_product
from tnnkit.series import PowerSeries, ps_div, ps_mul

P = PowerSeries.poly
fast = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)
pos = st.fractions(min_value=F(1, 6), max_value=6, max_denominator=6)
coeffs = st.lists(rat, min_size=1, max_size=6)


@st.composite
def normalized_pair(draw):
    p = P([1] + draw(st.lists(rat, min_size=1, max_size=4)))
    q = P([draw(pos)] + draw(st.lists(rat, min_size=1, max_size=4)))
    return p, q


@st.composite
def pole_data(draw):
    n = draw(st.integers(1, 3))
    sigmas = draw(st.lists(pos, min_size=n, max_size=n, unique=True))
    amps = draw(st.lists(pos, min_size=n, max_size=n))
    return SPoleData(draw(st.fractions(0, 4, max_denominator=4)), draw(st.fractions(0, 4, max_denominator=4)), tuple((-a, s) for a, s in zip(amps, sigmas)))


@st.composite
def index(draw, max_size=4, max_idx=8):
    k = draw(st.integers(1, max_size))
    rows = sorted(draw(st.lists(st.integers(1, max_idx), min_size=k, max_size=k, unique=True)))
    cols = sorted(draw(st.lists(st.integers(1, max_idx), min_size=k, max_size=k, unique=True)))
    return MinorIndex(tuple(rows), tuple(cols))


@fast
@given(coeffs, coeffs)
def test_product_matches_convolution(a, b):
    assert ps_mul(P(a), P(b)) == P(poly_mul(a, b))


@fast
@given(coeffs, st.lists(rat, min_size=0, max_size=4), st.integers(0, 8))
def test_division_matches_long_division(num, tail, order):
    den = [F(1)] + tail
    assert ps_div(P(num), P(den), order).coeffs[: order + 1] == tuple(series_quotient(num, den, order))


@fast
@given(normalized_pair(), index())
def test_minor_equals_cofactor_expansion(pq, idx):
    spec = HurwitzPair(*pq)
    w = window(spec, 8, 8)
    assert minor(spec, idx) == cofactor_det(w.sub(idx.rows, idx.cols))


@fast
@given(normalized_pair(), st.integers(2, 6), st.integers(0, 10))
def test_hlpm_identity(pq, k, extra):
    p, q = pq
    beta = q.coeff(1) - q.coeff(0) * p.coeff(1)
    assume(beta != 0)
    i = min(k + 4, k + extra % 5)
    lhs, rhs = verify_hlpm(p, q, k, max(i, k))
    assert lhs == rhs


@fast
@given(pole_data())
def test_stieltjes_fixtures(data):
    p, q = s_from_poles(data)
    run = routh_run(p, q)
    assert run.terminated and all(b > 0 for b in run.betas)
    for k in range(2, 9):
        lhs, rhs = verify_minor_product(p, q, k)
        assert lhs == rhs
    fr = factorize(p, q)
    assert verify_reconstruction(p, q, fr, 10).value == 0


@fast
@given(st.lists(st.tuples(st.fractions(-4, 4, max_denominator=4).filter(bool), st.integers(1, 3)), max_size=6), rat, st.integers(0, 10))
def test_fraction_series_roundtrip(terms, c0, order):
    s = to_series(CFraction(c0, tuple(terms)), order)
    back = correspond(s)
    known = min(order, determined_order(back))
    assert to_series(back, known).coeffs == s.coeffs[: known + 1]


@fast
@given(normalized_pair())
def test_serializer_roundtrip(pq):
    p, q = pq
    for x in (p, HurwitzPair(p, q), routh_run(p, q), factorize(p, q)):
        assert codec.loads(codec.dumps(x)) == x


@fast
@given(st.lists(pos, min_size=1, max_size=4))
def test_negative_rooted_toeplitz_entries_nonnegative(xs):
    f = P([1])
    for x in xs:
        f = ps_mul(f, P([1, x]))
    w = window(Toeplitz(f), 6, 6)
    assert all(v >= 0 for row in w.entries for v in row)
