"""Acceptance suite: ten criteria at their stated tolerances and time limits.

Run with ``pytest tests/test_acceptance.py`` (a summary line per criterion is
printed at the end) or directly with ``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gen import quasi_stable_form, s_pole_data, small_rational  # noqa: E402
from oracles import roots_float  # noqa: E402
from tnnkit.cfrac import CFraction, correspond, evaluate  # noqa: E402
from tnnkit.classify import (  # noqa: E402
    fixture_from_form,
    entire_neg_zeros_check,
    interlacing_check,
    is_PF_window,
    is_S_profile,
    quasi_stable_check,
    s_from_poles,
)
from tnnkit.cli import demo_stieltjes  # noqa: E402
from tnnkit.errors import ChainTooShort  # noqa: E402
from tnnkit.factorization import factorize, verify_reconstruction  # noqa: E402
from tnnkit.matrices import HurwitzF, Toeplitz  # noqa: E402
from tnnkit.minors import MinorIndex, minor, tnn_scan  # noqa: E402
from tnnkit.routh import routh_run, verify_hlpm, verify_minor_product  # noqa: E402
from tnnkit.series import PowerSeries, poly_gcd, ps_div, ps_mul  # noqa: E402
from tnnkit.sturm import count_roots  # noqa: E402

P = PowerSeries.poly
SEED = 2024

# terminating factorize runs from criteria 1-3, replayed by criterion 10
FACTORIZE_RUNS: list = []


def _record(p, q, fr):
    if fr.terminated:
        FACTORIZE_RUNS.append((p, q, fr.betas))


def criterion_1():
    p, q = P([1, 1]), P([1, 2])
    run = routh_run(p, q)
    ok = run.b0 == 1 and list(run.betas) == [1, 1] and run.omega == 2
    _record(p, q, factorize(p, q))
    cf = CFraction.regular(1, [1, 1])
    rng = random.Random(SEED)
    points = []
    while len(points) < 20:
        z = F(rng.randint(-50, 50), rng.randint(1, 20))
        if z != -1:
            points.append(z)
    bad = [z for z in points if evaluate(cf, z) != (1 + 2 * z) / (1 + z)]
    return ok and not bad, f"betas={list(map(str, run.betas))} omega={run.omega}, {len(points) - len(bad)}/20 exact"


def criterion_2():
    p, q = P([1, 2, 1]), P([1, 3, 2])
    fr = factorize(p, q)
    _record(p, q, fr)
    gcd = poly_gcd(p, q)
    gcd = gcd.scale(1 / gcd.coeff(0))
    res = verify_reconstruction(p, q, fr, 16)
    ok = fr.terminated and fr.g == P([1, 1]) and fr.g == gcd and res.value == 0
    return ok, f"g={list(map(str, fr.g.coeffs))} residual={res.value}"


def criterion_3():
    rng = random.Random(SEED)
    failures = []
    for n in range(200):
        f = fixture_from_form(quasi_stable_form(rng, 8))
        rep = quasi_stable_check(f)
        scan = tnn_scan(HurwitzF(f), 12, 12, 4)
        numeric_ok = all(r.real <= 1e-9 for r in roots_float(f.coeffs))
        if not (rep.certified and scan.all_nonneg and numeric_ok):
            failures.append(n)
        if rep.certificate is not None:
            fr = rep.certificate.factorization
            q, p = fr.routh.chain[0], fr.routh.chain[1]
            _record(p, q, fr)
    return not failures, f"200 fixtures, failures={failures[:5]}"


def criterion_4():
    out = []
    f = P([1, -1, 1])
    rep = quasi_stable_check(f)
    out.append(rep.refuted and minor(HurwitzF(f), rep.witness.index) == rep.witness.value < 0)
    rep = entire_neg_zeros_check(P([1, 1, 1]))
    idx = MinorIndex((2, 3), (2, 3))
    out.append(rep.refuted and rep.witness.index == idx and rep.witness.value == -1 and minor(rep.matrix, idx) == -1)
    rep = is_S_profile(P([1, 1]), P([1]))
    h3 = MinorIndex((1, 2, 3), (1, 2, 3))
    out.append(rep.refuted and minor(rep.matrix, h3) == -1 and minor(rep.matrix, rep.witness.index) == rep.witness.value < 0)
    return all(out), f"hurwitz_f/d_matrix/pair refuted: {out}"


def criterion_5():
    rng = random.Random(SEED)
    checked = 0
    pairs = 0
    while pairs < 100:
        p = P([1] + [small_rational(rng, -5, 5) for _ in range(rng.randint(1, 4))])
        q = P([small_rational(rng)] + [small_rational(rng, -5, 5) for _ in range(rng.randint(1, 4))])
        if q.coeff(1) - q.coeff(0) * p.coeff(1) == 0:
            continue
        pairs += 1
        for k in range(2, 7):
            for i in range(k, k + 5):
                lhs, rhs = verify_hlpm(p, q, k, i)
                if lhs != rhs:
                    return False, f"mismatch at k={k} i={i}"
                checked += 1
    fixtures = 0
    while fixtures < 50:
        p, q = s_from_poles(s_pole_data(rng, rng.randint(1, 4)))
        fixtures += 1
        for k in range(2, 9):
            try:
                lhs, rhs = verify_minor_product(p, q, k)
            except ChainTooShort:
                return False, "chain too short"
            if lhs != rhs:
                return False, f"product identity fails at k={k}"
    return True, f"{checked} shift identities on 100 pairs, product identity k<=8 on 50 fixtures"


def criterion_6():
    rep = demo_stieltjes(20, 0.5, 44)
    r = rep.result
    diffs = r["differences"]
    below = r["first_depth_below_1e-12"]
    ok = below is not None and below <= 40 and all(d < 1e-12 for d in diffs[below - 1 : 40])
    ok = ok and r["worpitzky_radius"] == "1/2" and r["roundtrip_exact"] and len(r["recovered_betas"]) == 20
    return ok, f"differences below 1e-12 from depth {below}, radius {r['worpitzky_radius']}, 20 betas recovered={r['roundtrip_exact']}"


def criterion_7():
    e = PowerSeries.series([F(1, math.factorial(k)) for k in range(24)], 23)
    scan = tnn_scan(Toeplitz(e), 12, 12, 4)
    rep = is_PF_window(P([1, -1]))
    ok = scan.all_nonneg and rep.refuted and len(rep.witness.index.rows) == 1
    return ok, f"exp: {scan.minors_checked} minors clean; 1-z witness {rep.witness.index} = {rep.witness.value}"


POLE_FIXTURES: list = []


def criterion_8():
    rng = random.Random(SEED)
    bad = 0
    for n in range(50):
        data = s_pole_data(rng, 1 + n % 4)
        p, q = s_from_poles(data)
        POLE_FIXTURES.append((p, q))
        rep = is_S_profile(p, q)
        if not (rep.certified and (rep.omega - 1) // 2 == data.pole_count):
            bad += 1
    return bad == 0, f"50 fixtures, law violations={bad}"


def criterion_9():
    if not POLE_FIXTURES:
        criterion_8()
    certified = sum(interlacing_check(p, q).certified for p, q in POLE_FIXTURES)
    # both zeros of q (-1/2, -2/5) sit between the zeros of p (-1, -1/3)
    p = ps_mul(P([1, 1]), P([1, 3]))
    q = ps_mul(P([1, 2]), P([1, F(5, 2)]))
    sturm_ok = count_roots(q, F(-1), F(-1, 3)) == 2 and count_roots(p, F(-1), F(-1, 3)) == 1
    rep = interlacing_check(p, q)
    ok = certified == len(POLE_FIXTURES) and rep.refuted and sturm_ok
    return ok, f"{certified}/{len(POLE_FIXTURES)} fixtures interlace; constructed pair refuted={rep.refuted}"


def criterion_10():
    if not FACTORIZE_RUNS:
        for c in (criterion_1, criterion_2, criterion_3):
            c()
    bad = 0
    for p, q, betas in FACTORIZE_RUNS:
        order = 2 * max(p.degree, q.degree) + 2 * len(betas) + 8
        cf = correspond(ps_div(q, p, order))
        if [c for c, _ in cf.terms] != list(betas) or any(r != 1 for _, r in cf.terms):
            bad += 1
    return bad == 0 and len(FACTORIZE_RUNS) > 2, f"{len(FACTORIZE_RUNS)} terminating runs, mismatches={bad}"


CRITERIA = [
    (1, criterion_1, 1.0),
    (2, criterion_2, 1.0),
    (3, criterion_3, 60.0),
    (4, criterion_4, None),
    (5, criterion_5, None),
    (6, criterion_6, None),
    (7, criterion_7, None),
    (8, criterion_8, None),
    (9, criterion_9, None),
    (10, criterion_10, None),
]


def check(fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f" (over the {limit:g} s limit)"
    return ok, f"{detail} [{elapsed:.2f} s]"


@pytest.mark.parametrize("n,fn,limit", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, fn, limit, record_property):
    ok, detail = check(fn, limit)
    record_property("criterion", n)
    record_property("detail", detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn, limit in CRITERIA:
        ok, detail = check(fn, limit)
        failed += not ok
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(1 if failed else 0)
