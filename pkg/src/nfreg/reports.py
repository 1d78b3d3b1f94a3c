"""Outcome records shared by the height, ideal, unit and bound checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import mpmath

VERIFIED = "verified"
VACUOUS = "vacuous"
HYPOTHESIS_FAILED = "hypothesis-failed"
FAILED = "failed"
UNCHECKED = "unchecked"  # bound evaluated without a value to compare against
VERDICTS = (VERIFIED, VACUOUS, HYPOTHESIS_FAILED, FAILED)

# margins subtract nearly equal high-precision values; keep every bit
MARGIN_BITS = 1024


def fmt(x, digits: int = 25) -> str | None:
    """Canonical decimal rendering used in reports (25 significant digits)."""
    if x is None:
        return None
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    with mpmath.workprec(MARGIN_BITS):
        return mpmath.nstr(mpmath.mpf(x), digits, min_fixed=-6, max_fixed=12, strip_zeros=False)


@dataclass
class MarginReport:
    """Outcome of checking ``lhs <= rhs`` (margin = rhs - lhs).

    ``holds`` is decided against the certified error: the inequality counts
    as established when margin >= -error. ``vacuous`` marks checks whose
    bound side carries no information (e.g. a negative lower bound).
    """

    name: str
    lhs: Any
    rhs: Any
    error: Any = 0
    vacuous: bool = False
    details: dict = field(default_factory=dict)
    exact_ok: bool = True  # companion exact identity; a failure here is never absorbed by the margin

    @property
    def margin(self):
        with mpmath.workprec(MARGIN_BITS):
            return mpmath.mpf(self.rhs) - mpmath.mpf(self.lhs)

    @property
    def holds(self) -> bool:
        return self.exact_ok and self.margin >= -self.error

    @property
    def verdict(self) -> str:
        if not self.holds:
            return FAILED
        return VACUOUS if self.vacuous else VERIFIED

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
            "margin": fmt(self.margin),
            "error": fmt(self.error),
            "verdict": self.verdict,
            "exact_ok": self.exact_ok,
            "details": {k: _plain(v) for k, v in sorted(self.details.items())},
        }


@dataclass
class BoundReport:
    """A lower bound evaluated against the quantity it bounds (usually Reg)."""

    theorem: str
    hypotheses: dict
    bound: Any
    value: Any
    error: Any
    verdict: str
    label: str = ""
    quantity: str = "Reg"
    notes: list = field(default_factory=list)

    @property
    def regulator(self):
        return self.value if self.quantity == "Reg" else None

    @property
    def margin(self):
        if self.bound is None or self.value is None:
            return None
        with mpmath.workprec(MARGIN_BITS):
            return mpmath.mpf(self.value) - mpmath.mpf(self.bound)

    def to_dict(self) -> dict:
        return {
            "field": self.label,
            "theorem": self.theorem,
            "hypotheses": {k: _plain(v) for k, v in sorted(self.hypotheses.items())},
            "quantity": self.quantity,
            "bound": fmt(self.bound),
            "value": fmt(self.value),
            "margin": fmt(self.margin),
            "error": fmt(self.error),
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def _plain(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in sorted(v.items())}
    return fmt(v)
