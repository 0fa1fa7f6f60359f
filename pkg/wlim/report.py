"""
Verdicts for the executable checks.

A check either exhibits a witness, exhibits a counterexample, or finds
neither within the bound it was run at. Absence is an answer, never an
exception.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class Status(str, Enum):
    VERIFIED = "verified"
    COUNTEREXAMPLE = "counterexample"
    NONE_FOUND = "none-found"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check run up to ``bound`` (None when the check is exact)."""

    status: Status
    bound: Optional[int] = None
    witness: Any = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is Status.VERIFIED

    @classmethod
    def verified(cls, witness: Any = None, bound: Optional[int] = None, detail: str = "") -> "Verdict":
        return cls(Status.VERIFIED, bound, witness, detail)

    @classmethod
    def counterexample(cls, witness: Any = None, bound: Optional[int] = None, detail: str = "") -> "Verdict":
        return cls(Status.COUNTEREXAMPLE, bound, witness, detail)

    @classmethod
    def none_found(cls, bound: Optional[int] = None, detail: str = "") -> "Verdict":
        return cls(Status.NONE_FOUND, bound, None, detail)

    @classmethod
    def check(cls, holds: bool, detail: str, bound: Optional[int] = None, witness: Any = None) -> "Verdict":
        """VERIFIED if ``holds`` else COUNTEREXAMPLE, with the same detail."""
        return cls(Status.VERIFIED if holds else Status.COUNTEREXAMPLE, bound, witness, detail)

    def to_dict(self) -> dict:
        out = {"status": self.status.value, "bound": self.bound, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out
