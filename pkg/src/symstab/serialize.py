"""Lossless JSON encoding of exact values."""

from __future__ import annotations

import json
from fractions import Fraction

from .exactlin import ExactMatrix, GaussianRational, as_fraction


def rational(x) -> str:
    """``"p/q"`` (or ``"p"`` for integers)."""
    return str(as_fraction(x))


def gaussian(z) -> dict:
    z = GaussianRational.coerce(z)
    return {"re": rational(z.re), "im": rational(z.im)}


def encode(obj):
    """Recursively convert exact values into JSON-ready data."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, GaussianRational):
        return gaussian(obj)
    if isinstance(obj, ExactMatrix):
        return [[gaussian(x) for x in row] for row in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in exact output")
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(encode(obj), indent=indent, sort_keys=True)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; raises ValueError otherwise."""
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)
