"""Lossless JSON encoding of exact values."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .numerics import Cyclotomic, LaurentPoly

SCHEMA_VERSION = 1


def fraction_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s)


def cyclotomic_to_json(c: Cyclotomic) -> dict:
    return {"conductor": c.conductor, "coefficients": [fraction_to_str(x) for x in c.coeffs]}


def cyclotomic_from_json(d: dict) -> Cyclotomic:
    return Cyclotomic(int(d["conductor"]), [Fraction(x) for x in d["coefficients"]])


def laurent_to_json(p: LaurentPoly) -> dict:
    return {
        "variable": p.var,
        "terms": [[e, fraction_to_str(p.terms[e])] for e in sorted(p.terms, reverse=True)],
        "text": str(p),
    }


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return fraction_to_str(obj)
    if isinstance(obj, float):
        # only wall-clock timings are floats; exact results never are
        return obj
    if isinstance(obj, Cyclotomic):
        return cyclotomic_to_json(obj)
    if isinstance(obj, LaurentPoly):
        return laurent_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"
