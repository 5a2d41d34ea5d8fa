"""Verification report record shared by the checkers and the CLI."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any


def round_sig(x, digits: int = 12):
    """Round floats to ``digits`` significant digits for stable JSON output."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.{digits}g}")
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {str(k): round_sig(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [round_sig(v, digits) for v in x]
    try:
        return round_sig(float(x), digits)
    except (TypeError, ValueError):
        return str(x)


@dataclass
class VerificationReport:
    claim: str
    bound: float
    achieved: float
    witness: str
    verdict: bool
    notes: str = ""
    strict: bool = False
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "bound": round_sig(float(self.bound)),
            "achieved": round_sig(float(self.achieved)),
            "witness": self.witness,
            "verdict": "pass" if self.verdict else "fail",
            "notes": self.notes,
        }
        if self.data:
            out["data"] = round_sig(self.data)
        return out


def compare(achieved: float, bound: float, strict: bool, tol: float = 0.0) -> bool:
    """``achieved < bound`` (strict) or ``achieved <= bound + tol``."""
    if strict:
        return achieved < bound
    return achieved <= bound + tol
