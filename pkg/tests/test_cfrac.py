import random
from fractions import Fraction as F

import pytest

from tnnkit.cfrac import (
    MAX_TERMS,
    TRUNCATED_CONSTANT,
    CFraction,
    convergents,
    correspond,
    correspond_rational,
    evaluate,
    to_series,
    worpitzky_radius,
)
from tnnkit.errors import DepthError, DomainError, EvaluationPole, InsufficientDepth
from tnnkit.series import PowerSeries, ps_div

P = PowerSeries.poly
GEOM = [F(1, 2 ** (j + 1)) for j in range(41)]


def test_correspond_examples():
    cf = correspond(ps_div(P([1, 2]), P([1, 1]), 10))
    assert cf.c0 == 1 and cf.terms == ((1, 1), (1, 1)) and cf.is_regular
    cf = correspond(ps_div(P([1]), P([1, -1]), 10))
    assert cf.terms == ((1, 1), (-1, 1)) and not cf.is_regular
    cf = correspond(P([5]))
    assert cf.c0 == 5 and cf.terms == ()


def test_correspond_rational_is_exact():
    cf = correspond_rational(P([1, 2]), P([1, 1]))
    assert cf.status == "exact" and cf.coefficients == (1, 1)


def test_correspond_flags_truncation():
    cf = correspond(ps_div(P([1, 2]), P([1, 1]), 10))
    assert cf.status == TRUNCATED_CONSTANT
    cf = correspond(ps_div(P([1]), P([1, -1, 1, 3]), 10), max_terms=2)
    assert cf.status == MAX_TERMS and not cf.terminated


def test_higher_exponent_terms():
    cf = correspond(PowerSeries.series([1, 0, 1, 0, 0, 0, 0], 6))
    assert cf.terms == ((1, 2),)
    f = ps_div(P([1, 0, 0, 2]), P([1, 0, 1]), 12)
    cf = correspond(f)
    assert any(r > 1 for _, r in cf.terms)
    assert to_series(cf, 12) == f


def test_coefficients_must_be_nonzero():
    with pytest.raises(DomainError):
        CFraction(1, ((0, 1),))


def test_convergent_recurrence():
    conv = convergents(CFraction.regular(1, [1, 1]), 2)
    assert conv[0].numerator == P([1]) and conv[0].denominator == P([1])
    assert conv[2].numerator == P([1, 2]) and conv[2].denominator == P([1, 1])
    with pytest.raises(DepthError):
        convergents(CFraction.regular(1, [1]), 3)


def test_convergent_denominators_are_normalized():
    for c in convergents(CFraction(2, ((3, 1), (-1, 2), (5, 1))), 3):
        assert c.denominator.coeff(0) == 1


def test_to_series_examples():
    assert to_series(CFraction(1, ((1, 1), (-1, 1))), 4) == PowerSeries.series([1] * 5)
    assert to_series(CFraction(3), 3) == PowerSeries.series([3, 0, 0, 0])


def test_to_series_depth_limit():
    cf = CFraction.regular(1, GEOM[:5], terminated=False)
    to_series(cf, 5)
    with pytest.raises(InsufficientDepth):
        to_series(cf, 6)


def test_evaluate_examples():
    cf = CFraction.regular(1, [1, 1])
    assert evaluate(cf, 1.0) == 1.5
    assert evaluate(cf, F(1)) == F(3, 2)
    assert evaluate(CFraction.regular(7, GEOM), 0.0) == 7


def test_evaluate_matches_convergent_quotient_exactly():
    rng = random.Random(1)
    cf = CFraction(F(1, 2), ((2, 1), (F(-1, 3), 2), (5, 1)))
    last = convergents(cf)[-1]
    for _ in range(10):
        z = F(rng.randint(1, 9), rng.randint(1, 9))
        assert evaluate(cf, z) == last.numerator.evaluate(z) / last.denominator.evaluate(z)


def test_evaluate_pole():
    with pytest.raises(EvaluationPole):
        evaluate(CFraction(0, ((1, 1), (-1, 1))), F(1))


def test_complex_evaluation():
    v = evaluate(CFraction.regular(1, [1, 1]), 1j)
    assert abs(v - (1 + 2j) / (1 + 1j)) < 1e-15


def test_geometric_convergence():
    cf = CFraction.regular(1, GEOM)
    assert abs(evaluate(cf, 0.5, 40) - evaluate(cf, 0.5, 41)) < 1e-12


def test_worpitzky_examples():
    assert worpitzky_radius(GEOM, 0).radius == F(1, 2)
    assert worpitzky_radius([1, 1, 1], 0).radius == F(1, 4)
    assert worpitzky_radius(GEOM, 2).radius == 2
    with pytest.raises(DomainError):
        worpitzky_radius([1], 3)


def test_partial_sums_of_geometric_betas_bounded():
    sums = [sum(GEOM[: n + 1]) for n in range(len(GEOM))]
    assert all(a < b for a, b in zip(sums, sums[1:])) and sums[-1] < 1
