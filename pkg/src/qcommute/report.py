"""Machine-readable outcome of one check."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ._scalar import to_str

PASS = "Pass"
FAIL = "Fail"
EVIDENCE = "ConjectureEvidence"

# What a check establishes.  Only "theorem" failures decide the exit status.
THEOREM = "theorem"
CONJECTURE = "conjecture"
APPROXIMATE = "approximate"


@dataclass
class Discrepancy:
    location: str
    lhs: Any
    rhs: Any

    def to_dict(self) -> dict:
        return {"location": self.location, "lhs": _fmt(self.lhs), "rhs": _fmt(self.rhs)}


def _fmt(x):
    if x is None or isinstance(x, (str, bool)):
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return to_str(x)
    return str(x)


@dataclass
class VerificationReport:
    check_name: str
    status: str
    kind: str
    point: Any = None  # ParamPoint, or a plain dict for non-point checks
    trunc: Any = None  # Truncation, a matrix size, or an order
    first_discrepancy: Discrepancy | None = None
    elapsed: float = 0.0
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == FAIL and self.first_discrepancy is None:
            raise ValueError("a failing report needs a first discrepancy")
        if self.status != FAIL and self.first_discrepancy is not None:
            raise ValueError("only failing reports carry a discrepancy")

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self, *, timings: bool = False) -> dict:
        point = self.point.to_dict() if hasattr(self.point, "to_dict") else self.point
        trunc = self.trunc.to_dict() if hasattr(self.trunc, "to_dict") else self.trunc
        d = {
            "check_name": self.check_name,
            "status": self.status,
            "kind": self.kind,
            "seed": self.seed,
            "point": point,
            "trunc": trunc,
            "first_discrepancy": None if self.first_discrepancy is None else self.first_discrepancy.to_dict(),
            "details": self.details,
        }
        if timings:
            d["elapsed"] = round(self.elapsed, 6)
        return d

    def to_json(self, *, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings=timings), sort_keys=True, separators=(",", ":"))


def success_status(kind: str) -> str:
    return EVIDENCE if kind == CONJECTURE else PASS
