"""Command-line front end.

Every subcommand turns its options into a :class:`JobSpec` payload and goes
through :func:`run`, so ``tnnkit batch`` can replay the same payloads from a
file.  Exit codes: 0 certified or consistent, 1 refuted, 2 inconclusive,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import cfrac, classify, codec, factorization, matrices, minors, routh, series
from .errors import TnnkitError
from .factorization import Budget

OK, REFUTED, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3

_VERDICT_CODES = {
    "all_nonneg": OK,
    "violated": REFUTED,
    "certified_tnn": OK,
    "certified_yes": OK,
    "refuted": REFUTED,
    "inconclusive": INCONCLUSIVE,
    routh.TERMINATED: OK,
    routh.NEGATIVE_BETA: REFUTED,
    routh.ZERO_BETA_NONPROPORTIONAL: REFUTED,
    routh.BUDGET_EXHAUSTED: INCONCLUSIVE,
}


@dataclass(frozen=True)
class JobSpec:
    command: str
    payload: dict = field(default_factory=dict)
    budget: Budget = field(default_factory=Budget)
    output: str | None = None


@dataclass
class RunReport:
    command: str
    result: object
    exit_code: int
    exact: bool = True
    truncated: bool = False
    wall_time: float = 0.0
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "exit_code": self.exit_code,
            "exact": self.exact,
            "truncated": self.truncated,
            "wall_time": round(self.wall_time, 6),
            "error": self.error,
            "result": self.result,
        }


class InputError(TnnkitError):
    pass


# ------------------------------------------------------------ payload parsing


class _Inputs:
    """Reads payload fields and remembers whether any series was truncated."""

    def __init__(self, payload: dict):
        self.payload = payload
        self.truncated = False

    def has(self, key) -> bool:
        return self.payload.get(key) is not None

    def raw(self, key, default=None):
        v = self.payload.get(key)
        return default if v is None else v

    def series(self, key) -> series.PowerSeries:
        if not self.has(key):
            raise InputError(f"missing --{key.replace('_', '-')}")
        s = codec.series_from_json(self.payload[key])
        self.truncated |= not s.is_polynomial
        return s

    def rational(self, key, default=None) -> Fraction:
        v = self.raw(key, default)
        if v is None:
            raise InputError(f"missing --{key}")
        return series.as_rational(str(v))

    def integer(self, key, default=None) -> int:
        v = self.raw(key, default)
        if v is None:
            raise InputError(f"missing --{key}")
        return int(v)

    def index_list(self, key) -> tuple[int, ...]:
        v = self.raw(key)
        if v is None:
            raise InputError(f"missing --{key}")
        if isinstance(v, str):
            v = json.loads(v) if v.strip().startswith("[") else [int(x) for x in v.split(",")]
        return tuple(int(x) for x in v)

    def json_obj(self, key):
        v = self.raw(key)
        if v is None:
            raise InputError(f"missing --{key}")
        return json.loads(v) if isinstance(v, str) else v

    def matrix(self):
        if self.has("spec"):
            return codec.matrix_from_json(self.json_obj("spec"))
        kind = self.raw("kind")
        if kind in ("hurwitz_pair", "pair"):
            return matrices.HurwitzPair(self.series("p"), self.series("q"))
        if kind == "toeplitz":
            return matrices.Toeplitz(self.series("f"))
        if kind == "hurwitz_f":
            return matrices.HurwitzF(self.series("f"))
        if kind in ("d_matrix", "d"):
            return matrices.DMatrix(self.series("f"))
        if kind == "j_factor":
            return matrices.JFactor(self.rational("c"), self.rational("beta"))
        if kind == "h_one_one":
            return matrices.HOneOne()
        if kind == "diag_trim":
            return matrices.DiagTrim(self.rational("beta"))
        raise InputError(f"unknown matrix kind {kind!r}")


def _normalized(inp: _Inputs):
    p, q = inp.series("p"), inp.series("q")
    if p.coeff(0) != 1 and p.coeff(0) > 0:
        p, q, _ = series.normalize_pair(p, q)
    return p, q


# ---------------------------------------------------------------- commands


def _cmd_series(inp: _Inputs, budget: Budget):
    op = inp.raw("op", "show")
    f = inp.series("f")
    order = inp.integer("order", 8)
    if op == "show":
        return f, None
    if op == "add":
        return f + inp.series("g"), None
    if op == "mul":
        return f * inp.series("g"), None
    if op == "div":
        return series.ps_div(f, inp.series("g"), order), None
    if op == "derivative":
        return series.ps_derivative(f), None
    if op == "split":
        sp = series.even_odd_split(f)
        return {"j": sp.j, "f0": sp.f0, "q_even": sp.q_even, "p_odd": sp.p_odd}, None
    if op == "gcd":
        return series.poly_gcd(f, inp.series("g")), None
    if op == "reverse":
        return series.poly_reverse(f, inp.integer("n", max(f.degree, 0))), None
    raise InputError(f"unknown series op {op!r}")


def _cmd_matrix(inp: _Inputs, budget: Budget):
    spec = inp.matrix()
    n = inp.integer("rows", budget.window)
    m = inp.integer("cols", n)
    out = {"spec": spec, "window": matrices.window(spec, n, m)}
    if inp.has("rho"):
        out["norm"] = matrices.norm_rho(spec, inp.rational("rho"), n, m)
    return out, None


def _cmd_minor(inp: _Inputs, budget: Budget):
    spec = inp.matrix()
    idx = minors.MinorIndex(inp.index_list("rows"), inp.index_list("cols"))
    val = minors.minor(spec, idx)
    return {"index": idx, "value": val}, None


def _cmd_tnn(inp: _Inputs, budget: Budget):
    spec = inp.matrix()
    n = inp.integer("window", budget.window)
    k = inp.integer("max_order", budget.max_order)
    rep = minors.tnn_scan(spec, n, n, k, inp.raw("method", "auto"))
    return rep, rep.verdict


def _cmd_routh(inp: _Inputs, budget: Budget):
    p, q = _normalized(inp)
    res = routh.routh_run(p, q, inp.integer("max_steps", budget.max_steps))
    return res, res.status


def _cmd_cfrac(inp: _Inputs, budget: Budget):
    op = inp.raw("op", "correspond")
    if op == "correspond":
        return cfrac.correspond(inp.series("f"), inp.integer("max_terms", budget.max_steps)), None
    cf = codec.decode(cfrac.CFraction, inp.json_obj("cf"))
    depth = inp.raw("depth")
    depth = None if depth is None else int(depth)
    if op == "convergents":
        return cfrac.convergents(cf, depth), None
    if op == "eval":
        return cfrac.evaluate(cf, _point(inp.raw("z", "0")), depth), None
    if op == "series":
        return cfrac.to_series(cf, inp.integer("order", 8)), None
    raise InputError(f"unknown cfrac op {op!r}")


def _point(z):
    """Rational strings stay exact; anything with a decimal point or 'j' becomes floating."""
    z = str(z)
    if "j" in z:
        return complex(z)
    if "." in z or "e" in z.lower():
        return float(z)
    return Fraction(z)


def _cmd_factorize(inp: _Inputs, budget: Budget):
    p, q = _normalized(inp)
    window = inp.integer("verify_window", budget.window)
    rho = inp.rational("rho", budget.rho)
    b = Budget(window, min(budget.max_order, window), inp.integer("max_steps", budget.max_steps), rho)
    fr = factorization.factorize(p, q, b.max_steps, window, rho)
    cert = factorization.tnn_certificate(p, q, b)
    return {"factorization": fr, "certificate": cert}, cert.kind


def _cmd_classify(inp: _Inputs, budget: Budget):
    pred = inp.raw("predicate")
    if pred is None:
        raise InputError("missing --predicate")
    if inp.has("input"):
        extra = inp.json_obj("input")
        if not isinstance(extra, dict):
            raise InputError("--input must be a JSON object")
        inp.payload = {**extra, **{k: v for k, v in inp.payload.items() if k != "input"}}
    if pred == "s":
        p, q = _normalized(inp)
        rep = classify.is_S_profile(p, q, inp.integer("k_max", budget.window))
    elif pred == "r":
        p, q = _normalized(inp)
        rep = classify.is_R_profile(p, q, inp.integer("m_max", budget.window // 2))
    elif pred == "pf":
        rep = classify.is_PF_window(inp.series("f"), budget.window, budget.max_order)
    elif pred == "quasi-stable":
        rep = classify.quasi_stable_check(inp.series("f"), budget)
    elif pred == "neg-zeros":
        rep = classify.entire_neg_zeros_check(inp.series("f"), budget)
    elif pred == "hurwitz-profile":
        rep = classify.hurwitz_profile(inp.series("f"), inp.integer("k_max", budget.window))
    elif pred == "interlacing":
        rep = classify.interlacing_check(inp.series("p"), inp.series("q"))
    else:
        raise InputError(f"unknown predicate {pred!r}")
    return rep, rep.verdict


def _cmd_fixture(inp: _Inputs, budget: Budget):
    if inp.has("poles"):
        data = codec.decode(classify.SPoleData, inp.json_obj("poles"))
        p, q = classify.s_from_poles(data)
        return {"p": p, "q": q, "pole_count": data.pole_count}, None
    form = codec.decode(classify.ZeroPoleSpec, inp.json_obj("form"))
    f = classify.fixture_from_form(form, inp.integer("order", 16))
    inp.truncated |= not f.is_polynomial
    return f, None


def demo_stieltjes(n_terms: int = 20, z: float = 0.5, order: int | None = None, eval_depth: int = 41) -> RunReport:
    """Geometric Stieltjes fraction beta_j = 2^(-j-1): convergence and exact round trip."""
    if n_terms < 2:
        raise InputError("n_terms must be at least 2")
    start = time.perf_counter()
    depth = max(eval_depth, n_terms)
    betas = [Fraction(1, 2 ** (j + 1)) for j in range(depth)]
    cf = cfrac.CFraction.regular(1, betas)
    values = [cfrac.evaluate(cf, z, d) for d in range(depth + 1)]
    diffs = [abs(b - a) for a, b in zip(values, values[1:])]
    below = next((d + 1 for d, x in enumerate(diffs) if x < 1e-12), None)
    radius = cfrac.worpitzky_radius(betas, 0)

    order = 2 * n_terms + 4 if order is None else order
    conv = cfrac.convergents(cfrac.CFraction.regular(1, betas[:n_terms]))[-1]
    f = series.ps_div(conv.numerator, conv.denominator, order)
    run = routh.routh_run(series.PowerSeries.constant(1), f, n_terms + 2)
    recovered = list(run.betas)
    exact_match = recovered == betas[:n_terms]
    small = None
    if n_terms == 2 and isinstance(z, Fraction):
        small = cfrac.evaluate(cfrac.CFraction.regular(1, betas[:2]), z)
    result = {
        "betas": betas[:n_terms],
        "z": z,
        "values": values,
        "differences": diffs,
        "first_depth_below_1e-12": below,
        "worpitzky_radius": radius.radius,
        "roundtrip_order": order,
        "roundtrip_status": run.status,
        "recovered_betas": recovered,
        "roundtrip_exact": exact_match,
        "two_term_value": small,
    }
    code = OK if exact_match else REFUTED
    return RunReport("demo", codec.encode(result), code, True, False, time.perf_counter() - start)


def _cmd_demo(inp: _Inputs, budget: Budget):
    name = inp.raw("name", "stieltjes")
    if name != "stieltjes":
        raise InputError(f"unknown demo {name!r}")
    z = _point(inp.raw("z", "0.5"))
    order = inp.raw("order")
    rep = demo_stieltjes(inp.integer("n", 20), z, None if order is None else int(order))
    return rep, None


_COMMANDS = {
    "series": _cmd_series,
    "matrix": _cmd_matrix,
    "minor": _cmd_minor,
    "tnn": _cmd_tnn,
    "routh": _cmd_routh,
    "cfrac": _cmd_cfrac,
    "factorize": _cmd_factorize,
    "classify": _cmd_classify,
    "fixture": _cmd_fixture,
    "demo": _cmd_demo,
}


def run(job: JobSpec) -> RunReport:
    start = time.perf_counter()
    handler = _COMMANDS.get(job.command)
    if handler is None:
        return RunReport(job.command, None, INPUT_ERROR, error=f"unknown command {job.command!r}")
    inp = _Inputs(dict(job.payload))
    try:
        result, verdict = handler(inp, job.budget)
    except (TnnkitError, ValueError, TypeError, KeyError, json.JSONDecodeError, ZeroDivisionError, IndexError) as exc:
        return RunReport(job.command, None, INPUT_ERROR, wall_time=time.perf_counter() - start, error=f"{type(exc).__name__}: {exc}")
    if isinstance(result, RunReport):
        report = result
    else:
        code = _VERDICT_CODES.get(verdict, OK) if verdict else OK
        body = codec.to_json(result) if not isinstance(result, (dict, list)) else codec.encode(result)
        report = RunReport(job.command, body, code, not inp.truncated, inp.truncated, time.perf_counter() - start)
    if job.output:
        write_atomic(job.output, json.dumps(report.to_json(), indent=2))
    return report


def write_atomic(path: str, text: str):
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tnnkit-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run_batch(jobs: list[dict], default_budget: Budget, seed: int = 0) -> dict:
    """Run job dicts in order; random fixture batches use ``seed``."""
    random.seed(seed)
    reports = []
    for raw in jobs:
        b = raw.get("budget") or {}
        budget = Budget(
            int(b.get("window", default_budget.window)),
            int(b.get("max_order", default_budget.max_order)),
            int(b.get("max_steps", default_budget.max_steps)),
            series.as_rational(str(b.get("rho", default_budget.rho))),
        )
        reports.append(run(JobSpec(raw["command"], raw.get("payload", {}), budget)).to_json())
    worst = max((r["exit_code"] for r in reports), default=OK)
    return {"seed": seed, "jobs": reports, "exit_code": worst}


# ---------------------------------------------------------------- argparse


def _series_opts(p: argparse.ArgumentParser, *names):
    for n in names:
        p.add_argument(f"--{n}", help=f"series {n}: '[1,2,1]' or a JSON series object")


def _matrix_opts(p: argparse.ArgumentParser):
    p.add_argument("--kind", default="hurwitz_pair",
                   choices=["hurwitz_pair", "pair", "toeplitz", "hurwitz_f", "d_matrix", "d", "j_factor", "h_one_one", "diag_trim"])
    p.add_argument("--spec", help="full matrix spec as JSON (overrides --kind)")
    _series_opts(p, "p", "q", "f")
    p.add_argument("--c")
    p.add_argument("--beta")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tnnkit", description=__doc__.splitlines()[0])
    ap.add_argument("--window", type=int, default=12, help="scan window size (default 12)")
    ap.add_argument("--max-order", type=int, default=4, help="largest minor size scanned (default 4)")
    ap.add_argument("--max-steps", type=int, default=32, help="Routh step budget (default 32)")
    ap.add_argument("--rho", default="1/2", help="norm weight in (0, 1] (default 1/2)")
    ap.add_argument("--output", help="also write the report to this file")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("series", help="series arithmetic")
    sp.add_argument("op", nargs="?", default="show", choices=["show", "add", "mul", "div", "derivative", "split", "gcd", "reverse"])
    _series_opts(sp, "f", "g")
    sp.add_argument("--order", type=int)
    sp.add_argument("--n", type=int)

    sp = sub.add_parser("matrix", help="window of a structured matrix")
    _matrix_opts(sp)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--cols", type=int)
    sp.add_argument("--norm-rho", dest="norm_rho")

    sp = sub.add_parser("minor", help="one exact minor")
    _matrix_opts(sp)
    sp.add_argument("--rows", required=True, help="e.g. 2,3")
    sp.add_argument("--cols", required=True)

    sp = sub.add_parser("tnn", help="windowed total-nonnegativity scan")
    _matrix_opts(sp)
    sp.add_argument("--method", choices=["auto", "exact"], default="auto")

    sp = sub.add_parser("routh", help="Routh/Stieltjes recurrence")
    _series_opts(sp, "p", "q")

    sp = sub.add_parser("cfrac", help="C-fractions")
    sp.add_argument("op", choices=["correspond", "convergents", "eval", "series"])
    _series_opts(sp, "f")
    sp.add_argument("--cf", help='{"c0": "1", "terms": [["1", 1], ...]}')
    sp.add_argument("--max-terms", dest="max_terms", type=int)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--z")
    sp.add_argument("--order", type=int)

    sp = sub.add_parser("factorize", help="J-factor factorization and TNN certificate")
    _series_opts(sp, "p", "q")
    sp.add_argument("--verify-window", dest="verify_window", type=int)

    sp = sub.add_parser("classify", help="function-class predicates")
    sp.add_argument("--predicate", required=True,
                    choices=["s", "r", "pf", "quasi-stable", "neg-zeros", "hurwitz-profile", "interlacing"])
    sp.add_argument("--input", help="JSON object with f, p, q fields")
    _series_opts(sp, "f", "p", "q")
    sp.add_argument("--k-max", dest="k_max", type=int)
    sp.add_argument("--m-max", dest="m_max", type=int)

    sp = sub.add_parser("fixture", help="fixtures from zero/pole data")
    sp.add_argument("--form", help="ZeroPoleSpec as JSON")
    sp.add_argument("--poles", help='{"B0": "1", "B1": "1", "poles": [["-1", "1"]]}')
    sp.add_argument("--order", type=int)

    sp = sub.add_parser("demo", help="reproducibility demos")
    sp.add_argument("name", nargs="?", default="stieltjes", choices=["stieltjes"])
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--z", default="0.5")
    sp.add_argument("--order", type=int)

    sp = sub.add_parser("batch", help="run a JSON list of jobs")
    sp.add_argument("jobs", help="file holding [{\"command\": ..., \"payload\": {...}}, ...]")
    sp.add_argument("--seed", type=int, default=0)
    return ap


_GLOBAL = {"window", "max_order", "max_steps", "rho", "output", "command"}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        budget = Budget(args.window, args.max_order, args.max_steps, series.as_rational(args.rho))
    except (ValueError, TnnkitError) as exc:
        print(json.dumps({"error": str(exc), "exit_code": INPUT_ERROR}))
        return INPUT_ERROR

    if args.command == "batch":
        try:
            with open(args.jobs) as fh:
                jobs = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(json.dumps({"error": str(exc), "exit_code": INPUT_ERROR}))
            return INPUT_ERROR
        out = run_batch(jobs, budget, args.seed)
        text = json.dumps(out, indent=2)
        if args.output:
            write_atomic(args.output, text)
        print(text)
        return out["exit_code"]

    payload = {k: v for k, v in vars(args).items() if k not in _GLOBAL and v is not None}
    if args.command == "matrix" and "norm_rho" in payload:
        payload["rho"] = payload.pop("norm_rho")
    if args.command == "tnn":
        payload.setdefault("window", args.window)
        payload.setdefault("max_order", args.max_order)
    if args.command == "factorize":
        payload["rho"] = args.rho
    if args.command == "demo":
        payload["name"] = payload.get("name", "stieltjes")
    report = run(JobSpec(args.command, payload, budget, args.output))
    print(json.dumps(report.to_json(), indent=2))
    if report.error:
        print(report.error, file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
