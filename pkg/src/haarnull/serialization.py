"""JSON-compatible text forms for measures, specs, and cylinder sets.

Rationals travel as "p/q" strings so every value survives a round trip
exactly.  Integers are accepted on input wherever a rational is expected.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .measures import (
    CylinderSet,
    FiniteMeasureZ,
    PointMassTail,
    ProductMeasureSpec,
    TailPolicy,
    UniformTail,
)

__all__ = [
    "fraction_to_str",
    "fraction_from_str",
    "jsonify",
    "measure_to_dict",
    "measure_from_dict",
    "spec_to_dict",
    "spec_from_dict",
    "cylinder_to_dict",
    "cylinder_from_dict",
]


def fraction_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def fraction_from_str(text) -> Fraction:
    """Parse "p/q" or a plain integer (string or int) into a Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc
    raise ValueError(f"not a rational: {text!r}")


def jsonify(obj: Any) -> Any:
    """Recursively convert Fractions to "p/q" strings and tuples to lists."""
    if isinstance(obj, Fraction):
        return fraction_to_str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    return obj


def measure_to_dict(m: FiniteMeasureZ) -> dict:
    return {
        "weights": {str(z): fraction_to_str(w) for z, w in sorted(m.weights.items())}
    }


def measure_from_dict(d: dict) -> FiniteMeasureZ:
    if not isinstance(d, dict) or "weights" not in d:
        raise ValueError("measure object needs a 'weights' mapping")
    weights = d["weights"]
    if not isinstance(weights, dict):
        raise ValueError("'weights' must map integer points to rationals")
    return FiniteMeasureZ(
        {int(z): fraction_from_str(w) for z, w in weights.items()}
    )


def _tail_to_dict(tail: TailPolicy):
    if tail is None:
        return None
    if isinstance(tail, UniformTail):
        return {"kind": "uniform", "k": tail.k}
    return {"kind": "point", "z": tail.z}


def _tail_from_dict(d) -> TailPolicy:
    if d is None:
        return None
    if not isinstance(d, dict) or "kind" not in d:
        raise ValueError(f"bad tail policy: {d!r}")
    if d["kind"] == "uniform":
        return UniformTail(int(d["k"]))
    if d["kind"] == "point":
        return PointMassTail(int(d["z"]))
    raise ValueError(f"unknown tail kind: {d['kind']!r}")


def spec_to_dict(spec: ProductMeasureSpec) -> dict:
    return {
        "prefix": [measure_to_dict(m) for m in spec.prefix],
        "tail": _tail_to_dict(spec.tail),
    }


def spec_from_dict(d: dict) -> ProductMeasureSpec:
    if not isinstance(d, dict) or "prefix" not in d:
        raise ValueError("spec object needs a 'prefix' list")
    prefix = tuple(measure_from_dict(m) for m in d["prefix"])
    return ProductMeasureSpec(prefix, _tail_from_dict(d.get("tail")))


def cylinder_to_dict(cyl: CylinderSet) -> dict:
    return {"depth": cyl.depth, "prefixes": [list(s) for s in cyl.prefixes]}


def cylinder_from_dict(d: dict) -> CylinderSet:
    if not isinstance(d, dict) or "depth" not in d or "prefixes" not in d:
        raise ValueError("cylinder object needs 'depth' and 'prefixes'")
    return CylinderSet(
        int(d["depth"]), tuple(tuple(int(v) for v in s) for s in d["prefixes"])
    )
