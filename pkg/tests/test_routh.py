import random
from fractions import Fraction as F

import pytest

from gen import s_pole_data
from tnnkit.cfrac import CFraction, to_series
from tnnkit.classify import s_from_poles
from tnnkit.errors import ChainTooShort, InsufficientOrder, NormalizationError
from tnnkit.routh import (
    NEGATIVE_BETA,
    TERMINATED,
    ZERO_BETA_NONPROPORTIONAL,
    routh_run,
    routh_step,
    step_beta_minor,
    verify_hlpm,
    verify_minor_product,
)
from tnnkit.series import PowerSeries, ps_div

P = PowerSeries.poly


def test_step_examples():
    assert routh_step(P([1, 2]), P([1, 1])) == (1, P([1]))
    assert routh_step(P([1]), P([1, 1])) == (-1, P([1]))
    beta, nxt = routh_step(P([3, 3]), P([1, 1]))
    assert beta == 0 and nxt is None


def test_step_preconditions():
    with pytest.raises(NormalizationError):
        routh_step(P([1]), P([2, 1]))
    with pytest.raises(InsufficientOrder):
        routh_step(PowerSeries.series([1], 0), P([1, 1]))


def test_beta_is_third_principal_minor():
    for prev, cur in [(P([1, 2]), P([1, 1])), (P([1, 3, 2]), P([1, 2, 1])), (P([2, 1]), P([1, 5]))]:
        assert routh_step(prev, cur)[0] == step_beta_minor(prev, cur)


def test_run_examples():
    r = routh_run(P([1, 1]), P([1, 2]))
    assert (r.b0, r.betas, r.omega, r.status) == (1, (1, 1), 2, TERMINATED)
    assert r.chain[-1] == P([1])
    r = routh_run(P([1, 2, 1]), P([1, 3, 2]))
    assert r.betas == (1, 1) and r.omega == 2 and r.terminal == P([1, 1])
    r = routh_run(P([1, 1]), P([1]))
    assert r.status == NEGATIVE_BETA and r.status_index == 0 and r.betas == (-1,)
    assert r.status_label == "negative_beta(0)"


def test_run_zero_beta_nonproportional():
    r = routh_run(P([1, 1]), P([1, 1, 5]))
    assert r.status == ZERO_BETA_NONPROPORTIONAL and r.status_index == 0


def test_run_preconditions():
    with pytest.raises(NormalizationError):
        routh_run(P([2, 1]), P([1]))
    with pytest.raises(NormalizationError):
        routh_run(P([1, 1]), P([-1]))


def test_truncated_run_loses_one_order_per_step():
    betas = [F(1, 2 ** (j + 1)) for j in range(30)]
    f = to_series(CFraction.regular(1, betas, terminated=False), 12)
    r = routh_run(P([1]), f, 64)
    assert r.status == "budget_exhausted"
    assert list(r.betas) == betas[: len(r.betas)]
    for j, s in enumerate(r.chain[2:], start=1):
        assert s.order == 12 - j


def test_chain_invariants():
    rng = random.Random(5)
    for _ in range(20):
        p, q = s_from_poles(s_pole_data(rng, rng.randint(1, 3)))
        r = routh_run(p, q)
        for j, beta in enumerate(r.betas):
            prev, cur = r.p(j - 1), r.p(j)
            assert beta == step_beta_minor(prev, cur)
            nxt = r.p(j + 1)
            assert prev - cur.scale(prev.coeff(0)) == PowerSeries.monomial(1, beta) * nxt
        w = r.terminal
        last = r.p(r.omega - 1)
        assert last == w.scale(last.coeff(0))


def test_cfrac_round_trip_of_terminated_run():
    p, q = P([1, 3, 2]), P([1, 5, 5, 1])
    r = routh_run(p, q)
    cf = CFraction.regular(r.b0, r.betas)
    assert to_series(cf, 15) == ps_div(q, p, 15)


def test_hlpm_examples():
    assert verify_hlpm(P([1, 1]), P([1, 2]), 2, 2) == (1, 1)
    lhs, rhs = verify_hlpm(P([1, 1]), P([1, 2]), 3, 4)
    assert lhs == rhs
    lhs, rhs = verify_hlpm(P([1, 4, 1]), P([2, 1, 3]), 2, 2)
    assert lhs == rhs == P([2, 1, 3]).coeff(1) - 2 * 4


def test_minor_product_examples():
    assert verify_minor_product(P([1, 1]), P([1, 2]), 4) == (1, 1)
    lhs, rhs = verify_minor_product(P([1, 5]), P([2, 3]), 3)
    assert lhs == rhs == 3 - 2 * 5


def test_minor_product_chain_too_short():
    with pytest.raises(ChainTooShort):
        verify_minor_product(P([1, 1]), P([1, 1, 5]), 5)
