"""Cooperative wall-clock budgets shared by the exact solvers."""

from __future__ import annotations

import time


class BudgetExceeded(Exception):
    """Unwinds a solver that ran out of time; drivers catch it and report bounds."""


class Budget:
    """Wall-clock budget handed down through solver recursions.

    seconds=None means unlimited. Solvers poll check() at branch points;
    polling is cheap relative to the work between branch points, so no
    counter throttling is needed at this scale.
    """

    def __init__(self, seconds: float | None = None) -> None:
        self.seconds = seconds
        self._t0 = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self._t0

    def remaining(self) -> float | None:
        if self.seconds is None:
            return None
        return self.seconds - self.elapsed()

    def expired(self) -> bool:
        rem = self.remaining()
        return rem is not None and rem <= 0.0

    def check(self) -> None:
        if self.expired():
            raise BudgetExceeded

    def sub(self, seconds: float) -> "Budget":
        """A child budget capped both by `seconds` and by what is left here."""
        rem = self.remaining()
        if rem is None:
            return Budget(seconds)
        return Budget(min(seconds, max(rem, 0.0)))
