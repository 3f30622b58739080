"""Check results shared by the verifiers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .jsonio import fmt_real

__all__ = ["Status", "Check", "VerificationReport"]


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    BORDERLINE = "borderline"
    UNCERTIFIED = "uncertified"


@dataclass(frozen=True)
class Check:
    name: str
    status: Status
    residual: float = 0.0
    detail: str = ""

    def __post_init__(self):
        if not self.residual >= 0:
            raise ValueError("residual must be non-negative")

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "residual": fmt_real(self.residual),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        """True when no check failed or sits on a borderline."""
        return all(c.status in (Status.PASS, Status.UNCERTIFIED) for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list:
        return [c for c in self.checks if c.status in (Status.FAIL, Status.BORDERLINE)]

    def merged(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
