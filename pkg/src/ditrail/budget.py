"""Node-expansion budget shared by the exponential searches."""

from __future__ import annotations

import os

from .errors import BudgetExhausted

ENV_VAR = "DITRAIL_BUDGET"


class Budget:
    """Counts search expansions and raises once ``limit`` is exceeded.

    A single ``Budget`` can be threaded through several calls so that the
    caller sees the total work done.  ``limit=None`` means unlimited.
    """

    __slots__ = ("limit", "expansions", "exhausted")

    def __init__(self, limit: int | None = None):
        if limit is not None and limit < 0:
            raise ValueError("budget limit must be non-negative")
        self.limit = limit
        self.expansions = 0
        self.exhausted = False

    def tick(self, k: int = 1) -> None:
        self.expansions += k
        if self.limit is not None and self.expansions > self.limit:
            self.exhausted = True
            raise BudgetExhausted(self.limit)

    def as_dict(self) -> dict:
        return {"expansions": self.expansions, "exhausted": self.exhausted}

    def __repr__(self):
        return f"Budget(limit={self.limit}, expansions={self.expansions})"


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


def default_limit(fallback: int | None = None) -> int | None:
    """Expansion cap taken from ``DITRAIL_BUDGET`` when set."""
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{ENV_VAR} must be non-negative")
    return value
