from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckRecord:
    """Outcome of one verifier run.

    ``passed`` is None when the precondition did not hold and no claim was made.
    Each failure entry is a minimal reproducer (automorphism images, element, ...).
    """

    name: str
    passed: bool | None
    details: dict[str, Any] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.passed)

    def fail(self, **repro) -> None:
        self.passed = False
        self.failures.append(repro)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "details": self.details, "failures": self.failures}
