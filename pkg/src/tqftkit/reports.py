"""Validation reports shared by the checkers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Report:
    """Outcome of a check: ``passed``, or the first failed axiom with a witness."""

    passed: bool
    axiom: str = ""
    witness: tuple = ()
    detail: str = ""

    @classmethod
    def ok(cls) -> "Report":
        return cls(True)

    @classmethod
    def fail(cls, axiom: str, witness=(), detail: str = "") -> "Report":
        return cls(False, axiom, tuple(witness), detail)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict[str, Any]:
        if self.passed:
            return {"pass": True}
        return {
            "pass": False,
            "axiom": self.axiom,
            "witness": list(self.witness),
            "detail": self.detail,
        }
