"""JSON interchange for tensors and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .tensor3 import TripleTensor


class FormatError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def rational_str(x) -> str:
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational number: {text!r}") from exc


def parse_rationals(text: str) -> tuple[Fraction, ...]:
    """Comma-separated rationals, e.g. ``1,0,-1/2``."""
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise FormatError(f"expected comma-separated rationals, got {text!r}")
    return tuple(parse_rational(p) for p in parts)


def tensor_to_json(t: TripleTensor) -> dict:
    return {
        "a": t.a,
        "b": t.b,
        "c": t.c,
        "entries": [[[str(v) for v in t.entry(i, j)] for j in range(t.b)] for i in range(t.a)],
    }


def tensor_from_json(data: Any) -> TripleTensor:
    if not isinstance(data, dict):
        raise FormatError("tensor JSON must be an object")
    try:
        a, b, c, entries = int(data["a"]), int(data["b"]), int(data["c"]), data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"tensor JSON needs integer a, b, c and entries: {exc}") from exc
    if not isinstance(entries, list):
        raise FormatError("entries must be an a x b array of length-c arrays")
    try:
        coeffs = [[[parse_rational(v) for v in entry] for entry in row] for row in entries]
        return TripleTensor(a, b, c, coeffs)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def load_tensor(text: str) -> TripleTensor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc
    return tensor_from_json(data)
