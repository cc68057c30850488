"""JSON encoding for every value the library returns.

Rationals travel as ``"n/d"`` strings, series as
``{"coeffs": [...], "order": N, "polynomial": bool}`` and matrix specs as
objects with a ``"kind"`` key.  Other dataclasses are encoded field by field
and decoded by walking their type hints, so ``decode(type(x), encode(x)) == x``.
"""

from __future__ import annotations

import dataclasses
import json
import types
import typing
from fractions import Fraction
from functools import lru_cache

from . import cfrac, classify, factorization, matrices, minors, routh
from .errors import DomainError
from .series import PowerSeries, as_rational

_MATRIX_KINDS = {
    "hurwitz_pair": matrices.HurwitzPair,
    "toeplitz": matrices.Toeplitz,
    "hurwitz_f": matrices.HurwitzF,
    "d_matrix": matrices.DMatrix,
    "j_factor": matrices.JFactor,
    "h_one_one": matrices.HOneOne,
    "diag_trim": matrices.DiagTrim,
    "product": matrices.Product,
}
_KIND_OF = {cls: kind for kind, cls in _MATRIX_KINDS.items()}

_RECORDS = {
    cls.__name__: cls
    for cls in (
        matrices.Window,
        matrices.RhoNorm,
        minors.MinorIndex,
        minors.Witness,
        minors.TnnReport,
        routh.RouthResult,
        cfrac.CFraction,
        cfrac.Convergent,
        cfrac.WorpitzkyBound,
        factorization.Budget,
        factorization.FactorizationResult,
        factorization.TnnCertificate,
        classify.ClassReport,
        classify.SPoleData,
        classify.ZeroPoleSpec,
    )
}


def rat(x: Fraction) -> str:
    return str(x)


def series_to_json(s: PowerSeries) -> dict:
    return {"coeffs": [str(c) for c in s.coeffs], "order": s.order, "polynomial": s.is_polynomial}


def series_from_json(obj) -> PowerSeries:
    """Accepts the object form, a list of ascending coefficients, or its JSON text."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, list):
        return PowerSeries.poly(_exact(c) for c in obj)
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise DomainError(f"not a series: {obj!r}")
    coeffs = [_exact(c) for c in obj["coeffs"]]
    if obj.get("polynomial", False):
        return PowerSeries.poly(coeffs)
    return PowerSeries.series(coeffs, obj.get("order"))


def _exact(c):
    if isinstance(c, float):
        if not c.is_integer():
            raise DomainError(f"coefficient {c} must be an integer or an 'n/d' string")
        c = int(c)
    return as_rational(c)


def matrix_to_json(spec) -> dict:
    kind = _KIND_OF[type(spec)]
    out = {"kind": kind}
    if isinstance(spec, matrices.Product):
        out["factors"] = [matrix_to_json(f) for f in spec.factors]
        return out
    for f in dataclasses.fields(spec):
        out[f.name] = encode(getattr(spec, f.name))
    return out


def matrix_from_json(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        cls = _MATRIX_KINDS[obj["kind"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"unknown matrix spec {obj!r}") from exc
    if cls is matrices.Product:
        return cls(tuple(matrix_from_json(f) for f in obj["factors"]))
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name not in obj:
            raise DomainError(f"matrix kind {obj['kind']} needs field {f.name!r}")
        v = obj[f.name]
        kwargs[f.name] = series_from_json(v) if f.name in ("p", "q", "f") else as_rational(v)
    return cls(**kwargs)


def encode(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return rat(x)
    if isinstance(x, PowerSeries):
        return series_to_json(x)
    if type(x) in _KIND_OF:
        return matrix_to_json(x)
    if dataclasses.is_dataclass(x):
        return {f.name: encode(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    raise TypeError(f"cannot encode {type(x).__name__}")


@lru_cache(maxsize=None)
def _hints(cls):
    return typing.get_type_hints(cls)


def decode(hint, value):
    if value is None:
        return None
    origin = typing.get_origin(hint)
    if origin in (typing.Union, types.UnionType):
        options = [a for a in typing.get_args(hint) if a is not type(None)]
        for opt in options:
            if opt in (int, str, bool, float) and isinstance(value, opt):
                return value
        for opt in options:
            if opt not in (int, str, bool, float):
                return decode(opt, value)
        return value
    if origin is tuple:
        args = typing.get_args(hint)
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(decode(args[0], v) for v in value)
        return tuple(decode(a, v) for a, v in zip(args, value))
    if hint is Fraction:
        return as_rational(value)
    if hint is PowerSeries:
        return series_from_json(value)
    if hint in (int, str, bool, float):
        return value
    if hint is object or hint in _KIND_OF or hint is matrices.MatrixSpec:
        if isinstance(value, dict) and value.get("kind") in _MATRIX_KINDS:
            return matrix_from_json(value)
        return value
    if dataclasses.is_dataclass(hint):
        hints = _hints(hint)
        kwargs = {f.name: decode(hints[f.name], value[f.name]) for f in dataclasses.fields(hint) if f.name in value}
        return hint(**kwargs)
    return value


def to_json(x) -> dict:
    """Top-level encoding with a ``type`` tag so :func:`from_json` can find the class."""
    body = encode(x)
    if isinstance(body, dict) and dataclasses.is_dataclass(x):
        if type(x) in _KIND_OF:
            return body
        return {"type": type(x).__name__, **body}
    if isinstance(x, PowerSeries):
        return {"type": "PowerSeries", **body}
    return body


def from_json(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, dict):
        name = obj.get("type")
        if name is None and obj.get("kind") in _MATRIX_KINDS:
            return matrix_from_json(obj)
        if name == "PowerSeries":
            return series_from_json(obj)
        if name in _RECORDS:
            body = {k: v for k, v in obj.items() if k != "type"}
            return decode(_RECORDS[name], body)
    raise DomainError(f"cannot decode {obj!r}")


def dumps(x, **kw) -> str:
    return json.dumps(to_json(x), **kw)


def loads(text: str):
    return from_json(json.loads(text))
