"""Three-way check outcomes shared by every checker."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


class OracleMismatch(AssertionError):
    """Two independently computed quantities that must agree did not."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = None if witness is None else Fraction(witness)


@dataclass(frozen=True)
class Verdict:
    """Result of a congruence or identity check.

    ``SKIPPED`` means the hypotheses of the statement were not met for these
    parameters, which is different from a counterexample. Truthiness is
    ``status is PASS``.
    """

    status: Status
    witness: Optional[Fraction] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status is Status.PASS

    @classmethod
    def of(cls, ok: bool, witness=None) -> "Verdict":
        w = None if witness is None else Fraction(witness)
        return cls(Status.PASS if ok else Status.FAIL, w)

    @classmethod
    def skipped(cls, reason: str) -> "Verdict":
        return cls(Status.SKIPPED, None, reason)
