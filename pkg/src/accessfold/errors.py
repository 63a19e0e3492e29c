from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Report:
    """Outcome of a validation: ``ok`` or the first violated condition plus a witness."""

    ok: bool
    condition: str | None = None
    witness: Any = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


class AccessfoldError(Exception):
    pass


class InstanceError(AccessfoldError):
    """Malformed instance file (CLI exit code 2)."""


class InconclusiveError(AccessfoldError):
    """Acylindricity search hit its depth cap (exit code 3)."""


class BudgetExceeded(AccessfoldError):
    """Pipeline ran out of steps (exit code 4)."""


class EngineInvariantError(AccessfoldError):
    """An invariant that the theory guarantees was violated (exit code 5)."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class UnsupportedFoldShape(EngineInvariantError):
    pass
