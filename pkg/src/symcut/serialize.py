"""JSON documents for root data, polyhedra and cones.

Exact rationals travel as strings ``"p/q"`` (plain integers are accepted
on input).  Floats are never accepted where an exact value is expected.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import exact as ex
from .polyhedra import CHAMBER, FULL, EmptyPolyhedron, LabeledPolyhedron, PolyhedronError, make_facet
from .rootsys import RootDatum, UnsupportedCartanType, build_root_datum


class InputError(ValueError):
    """Malformed or inconsistent input document."""


def load_json_text(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"{source}: malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}") from None


def load_json_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None
    return load_json_text(text, path)


def check_keys(obj: dict, allowed: set, what: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be a JSON object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise InputError(f"unknown key(s) in {what}: {', '.join(unknown)}")


def rational(value, what: str = "value") -> Fraction:
    if isinstance(value, float):
        raise InputError(f"{what}: floats are not accepted for exact values, use \"p/q\" strings")
    try:
        return ex.as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{what}: cannot parse {value!r} as a rational") from None


def integer_vector(value, what: str) -> tuple:
    if not isinstance(value, list) or not value:
        raise InputError(f"{what} must be a nonempty list")
    out = []
    for v in value:
        q = rational(v, what)
        if q.denominator != 1:
            raise InputError(f"{what} must be integral, got {v!r}")
        out.append(int(q))
    return tuple(out)


def rational_vector(value, what: str) -> tuple:
    if not isinstance(value, list):
        raise InputError(f"{what} must be a list")
    return tuple(rational(v, what) for v in value)


def parse_root_datum(obj) -> RootDatum:
    try:
        if isinstance(obj, str):
            return build_root_datum(obj)
        check_keys(obj, {"type", "rank", "cartan_matrix", "pairing"}, "root_datum")
        if "cartan_matrix" not in obj:
            return build_root_datum(obj["type"], obj.get("rank"))
        return RootDatum.from_dict(obj)
    except (UnsupportedCartanType, KeyError, ValueError, TypeError) as err:
        if isinstance(err, InputError):
            raise
        raise InputError(f"bad root datum: {err}") from None


POLY_KEYS = {"root_datum", "ambient", "facets", "dim", "empty"}


def parse_polyhedron(obj, root_datum: RootDatum | None = None, what: str = "polyhedron"):
    check_keys(obj, POLY_KEYS, what)
    rd = parse_root_datum(obj["root_datum"]) if obj.get("root_datum") is not None else root_datum
    ambient = obj.get("ambient", CHAMBER if rd is not None else FULL)
    if ambient not in (CHAMBER, FULL):
        raise InputError(f"{what}: ambient must be 'chamber' or 'full'")
    dim = obj.get("dim")
    if obj.get("empty"):
        if rd is None and dim is None:
            raise InputError(f"{what}: empty polyhedron needs a root datum or dim")
        return EmptyPolyhedron(rd, ambient, rd.rank if rd else int(dim))
    if "facets" not in obj:
        raise InputError(f"{what}: missing 'facets'")
    facets = []
    for k, f in enumerate(obj["facets"]):
        where = f"{what}.facets[{k}]"
        if isinstance(f, list):
            if len(f) not in (2, 3):
                raise InputError(f"{where}: expected [beta, xi] or [beta, xi, label]")
            f = dict(zip(("beta", "xi", "label"), f))
        check_keys(f, {"beta", "xi", "label"}, where)
        if "beta" not in f or "xi" not in f:
            raise InputError(f"{where}: needs 'beta' and 'xi'")
        beta = integer_vector(f["beta"], f"{where}.beta")
        xi = rational(f["xi"], f"{where}.xi")
        label = f.get("label")
        try:
            facets.append(make_facet(beta, xi, None if label is None else int(label)))
        except PolyhedronError as err:
            raise InputError(f"{where}: {err}") from None
    try:
        return LabeledPolyhedron(rd, tuple(facets), ambient, dim)
    except PolyhedronError as err:
        raise InputError(f"{what}: {err}") from None


def polyhedron_to_dict(P) -> dict:
    return P.to_dict()


def to_jsonable(obj):
    """Recursively convert Fractions to "p/q" strings and tuples to lists."""
    if isinstance(obj, Fraction):
        return ex.fraction_str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"
