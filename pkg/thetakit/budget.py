"""Wall-clock budgets for exact searches."""

from __future__ import annotations

import time

# Only look at the clock every so many search nodes
_CHECK_INTERVAL = 256


class Deadline:
    """A monotonic-clock deadline shared by one solve call.

    Solvers call ``expired()`` from their inner loops; the clock is only
    consulted every few calls so the check stays off the hot path.
    """

    __slots__ = ("_calls", "_expired", "_expires_at")

    def __init__(self, expires_at: float | None) -> None:
        """Initialize the deadline."""
        self._expires_at = expires_at
        self._calls = 0
        self._expired = False

    @classmethod
    def after_ms(cls, budget_ms: int | None) -> Deadline:
        """Return a deadline ``budget_ms`` milliseconds from now (None for no limit)."""
        if budget_ms is None or budget_ms <= 0:
            return cls(None)
        return cls(time.monotonic() + budget_ms / 1000.0)

    @classmethod
    def unlimited(cls) -> Deadline:
        return cls(None)

    @property
    def remaining(self) -> float | None:
        if self._expires_at is None:
            return None
        return max(0.0, self._expires_at - time.monotonic())

    def expired(self) -> bool:
        if self._expires_at is None:
            return False
        if self._expired:
            return True
        self._calls += 1
        if self._calls % _CHECK_INTERVAL:
            return False
        self._expired = time.monotonic() >= self._expires_at
        return self._expired


def as_deadline(deadline: Deadline | None) -> Deadline:
    return deadline if deadline is not None else Deadline.unlimited()
