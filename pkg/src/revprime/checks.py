"""Verification outcome records shared by the checkers."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Literal

Mode = Literal["exact", "ratio"]


@dataclass(frozen=True)
class BoundCheck:
    lemma_id: str
    params: dict[str, Any]
    lhs: float
    rhs: float
    mode: Mode = "exact"
    tol: float = 0.0
    notes: tuple[str, ...] = field(default=())

    @property
    def slack(self) -> float:
        if self.mode == "ratio":
            return self.lhs / self.rhs if self.rhs else math.inf
        return self.rhs - self.lhs

    @property
    def verdict(self) -> bool | None:
        if self.mode == "ratio":
            return None
        return self.lhs <= self.rhs + self.tol

    @property
    def passed(self) -> bool:
        return self.verdict is not False

    def sort_key(self) -> tuple:
        return (self.lemma_id, tuple(sorted((k, repr(v)) for k, v in self.params.items())))

    def as_row(self) -> dict[str, Any]:
        v = self.verdict
        return {
            "lemma_id": self.lemma_id,
            "params": {k: _plain(v) for k, v in sorted(self.params.items())},
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "mode": self.mode,
            "tol": self.tol,
            "verdict": None if v is None else ("pass" if v else "fail"),
            "notes": list(self.notes),
        }


def _plain(v: Any) -> Any:
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)
