"""Machine-checkable records of a single inequality instance."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class BoundCertificate:
    """A named inequality ``lhs <= rhs`` evaluated on concrete data.

    ``slack`` is ``rhs - lhs``; ``passed`` allows ``lhs`` to exceed ``rhs``
    by at most ``tolerance``. ``witnesses`` holds whatever indices or
    auxiliary numbers explain where the extreme case was attained.
    """

    name: str
    lhs: float
    rhs: float
    tolerance: float = 0.0
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return bool(self.lhs <= self.rhs + self.tolerance)

    def to_record(self) -> dict[str, Any]:
        """JSON-ready mapping with the stable field order used by the CLI."""
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "slack": float(self.slack),
            "pass": self.passed,
            "witnesses": dict(self.witnesses),
        }


def all_passed(certificates) -> bool:
    return all(c.passed for c in certificates)
