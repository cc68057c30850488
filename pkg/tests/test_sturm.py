import random
from fractions import Fraction as F

import pytest

from oracles import roots_float
from tnnkit.errors import DegreeError
from tnnkit.series import PowerSeries, from_roots_negative
from tnnkit.sturm import (
    all_roots_real_negative,
    count_roots,
    is_real_simple,
    isolate_roots,
    root_bound,
    squarefree_part,
    sturm_sequence,
)

P = PowerSeries.poly


def test_sequence_needs_polynomial():
    with pytest.raises(DegreeError):
        sturm_sequence(P([3]))


def test_counts():
    p = from_roots_negative([1, 2, 3])
    assert count_roots(p) == 3
    assert count_roots(p, "-inf", F(0)) == 3
    assert count_roots(p, F(-5, 2), F(-3, 2)) == 1
    assert count_roots(P([1, 0, 1])) == 0


def test_squarefree():
    p = from_roots_negative([1, 1, 2])
    assert squarefree_part(p).degree == 2
    assert all_roots_real_negative(p)
    assert not is_real_simple(p)


def test_negative_axis():
    assert all_roots_real_negative(P([1, 2, 1]))
    assert not all_roots_real_negative(P([1, -1]))
    assert not all_roots_real_negative(P([1, 0, 1]))
    assert not all_roots_real_negative(P([0, 1]))


def test_isolation_against_numpy():
    rng = random.Random(9)
    for _ in range(20):
        rs = rng.sample(range(1, 40), rng.randint(1, 6))
        p = from_roots_negative([F(r, 3) for r in rs])
        ivs = isolate_roots(p)
        assert len(ivs) == len(rs)
        num = sorted(x.real for x in roots_float(p.coeffs))
        for (lo, hi), x in zip(ivs, num):
            assert float(lo) - 1e-9 < x <= float(hi) + 1e-9
        assert all(abs(x) < root_bound(p) for x in num)
