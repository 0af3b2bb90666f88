"""Common result record for all identity checkers.

Serialized shape:

    {"identity": str, "mode": "bare" | "normalized", "order": N | null,
     "params": {...}, "pass": bool,
     "residual": {"index": [r, c], "value": str} | null,
     "details": {...}}

All numbers inside params/details are rational strings "p/q".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .tensor import TensorMat, first_nonzero_entry, scalar_to_str


@dataclass
class CheckReport:
    identity: str
    mode: str
    order: int | None
    params: dict
    passed: bool
    residual: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "mode": self.mode,
            "order": self.order,
            "params": self.params,
            "pass": self.passed,
            "residual": self.residual,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "CheckReport":
        return CheckReport(
            identity=d["identity"],
            mode=d["mode"],
            order=d["order"],
            params=d["params"],
            passed=d["pass"],
            residual=d["residual"],
            details=d.get("details", {}),
        )

    @staticmethod
    def from_json(s: str) -> "CheckReport":
        return CheckReport.from_dict(json.loads(s))


def residual_of(lhs: TensorMat, rhs: TensorMat) -> dict | None:
    """First nonzero entry of lhs - rhs, or None when they agree."""
    hit = first_nonzero_entry(lhs - rhs)
    if hit is None:
        return None
    r, c, v = hit
    return {"index": [r, c], "value": scalar_to_str(v)}
