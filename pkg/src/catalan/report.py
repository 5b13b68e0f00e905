"""Structured pass/fail records shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def jsonable(value: Any) -> Any:
    """Convert library values (CycRat, Fraction, tuples, inf) to JSON-ready data."""
    from fractions import Fraction

    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator] if value.denominator != 1 else value.numerator
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass
class CheckReport:
    identity: str
    parameters: dict
    passed: bool
    lhs: Any = None
    rhs: Any = None
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.passed)

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "parameters": jsonable(self.parameters),
            "pass": bool(self.passed),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
        }
        if self.witness:
            out["witness"] = jsonable(self.witness)
        return out
