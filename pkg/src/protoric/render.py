"""Deterministic serialization of results.

JSON output sorts keys and uses compact separators; text output is a small
aligned key/value table.  Vectors render as (a,b,...), matrices row-major,
rationals as p/q strings, so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, bool) or isinstance(obj, int) or isinstance(obj, str) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return str(obj)


def _text_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool) or v is None:
        return str(v).lower() if v is not None else "none"
    if isinstance(v, (list, tuple)):
        if v and all(isinstance(x, (list, tuple)) for x in v):
            return " ".join(_text_value(x) for x in v)
        if v and all(isinstance(x, (int, Fraction)) for x in v):
            return "(" + ",".join(str(x) for x in v) + ")"
        return " ".join(_text_value(x) for x in v)
    return str(v)


def render(result, format: str = "json") -> str:
    """Serialize a result mapping deterministically."""
    if format == "json":
        return json.dumps(to_jsonable(result), sort_keys=True, separators=(",", ":"))
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    if not result:
        return ""
    if isinstance(result, dict):
        width = max(len(str(k)) for k in result)
        lines = [f"{str(k).ljust(width)}  {_text_value(v)}"
                 for k, v in sorted(result.items(), key=lambda kv: str(kv[0]))]
        return "\n".join(lines)
    return _text_value(result)


def format_inequality(normal) -> str:
    """One facet inequality as `m1 + 2*m2 >= 0`-style text."""
    parts = []
    for j, c in enumerate(normal, start=1):
        if c == 0:
            continue
        if c == 1:
            parts.append(f"m{j}")
        elif c == -1:
            parts.append(f"-m{j}")
        else:
            parts.append(f"{c}*m{j}")
    body = " + ".join(parts) if parts else "0"
    return f"{body} >= 0"


def format_inequalities(normals) -> str:
    return "; ".join(format_inequality(n) for n in normals)
