"""Work budgets for the potentially exponential searches.

Every operation that enumerates candidate strings takes a budget (maximum
candidates tested, maximum wall-clock seconds). Exceeding one raises
:class:`BudgetExceededError` carrying whatever partial state the search had
reached; results are never silently truncated.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

DEFAULT_MAX_STRINGS = 5_000_000
DEFAULT_MAX_SECONDS = 300.0

ENV_MAX_STRINGS = "LOGOGRAM_BUDGET_STRINGS"
ENV_MAX_SECONDS = "LOGOGRAM_BUDGET_SECONDS"


class BudgetExceededError(RuntimeError):
    """A search ran out of budget. ``partial`` holds the frontier reached."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class Budget:
    max_strings: int = DEFAULT_MAX_STRINGS
    max_seconds: float = DEFAULT_MAX_SECONDS

    def __post_init__(self):
        if self.max_strings <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")

    @classmethod
    def default(cls) -> "Budget":
        """Budget from the environment, falling back to built-in defaults."""
        return cls(
            max_strings=int(os.environ.get(ENV_MAX_STRINGS, DEFAULT_MAX_STRINGS)),
            max_seconds=float(os.environ.get(ENV_MAX_SECONDS, DEFAULT_MAX_SECONDS)),
        )

    def start(self, label: str) -> "Meter":
        return Meter(self, label)


class Meter:
    """Running tally against one budget; raises once a limit is crossed."""

    _CLOCK_STRIDE = 256  # time checks are amortized over this many charges

    def __init__(self, budget: Budget, label: str):
        self.budget = budget
        self.label = label
        self.count = 0
        self._deadline = time.monotonic() + budget.max_seconds

    def charge(self, partial=None) -> None:
        self.count += 1
        if self.count > self.budget.max_strings:
            raise BudgetExceededError(
                f"{self.label}: exceeded {self.budget.max_strings} candidate strings",
                partial=partial)
        if self.count % self._CLOCK_STRIDE == 0 and time.monotonic() > self._deadline:
            raise BudgetExceededError(
                f"{self.label}: exceeded {self.budget.max_seconds}s "
                f"after {self.count} candidates", partial=partial)

    def out_of_time(self) -> bool:
        return time.monotonic() > self._deadline
