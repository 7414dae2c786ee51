"""Search budgets shared by the exhaustive searches."""

from __future__ import annotations

import time


class BudgetExhausted(Exception):
    """A search ran out of budget before reaching a verdict."""

    def __init__(self, message: str = "budget exhausted", nodes: int = 0, state: object = None):
        super().__init__(message)
        self.nodes = nodes
        self.state = state


class Budget:
    """Node and/or wall-clock limit.  ``None`` fields are unlimited.

    The clock is only sampled every 1024 ticks so that checking stays cheap.
    """

    def __init__(self, max_nodes: int | None = None, max_seconds: float | None = None):
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0
        self._t0 = time.monotonic()

    @classmethod
    def from_ms(cls, ms: int | None) -> Budget:
        return cls(max_seconds=None if ms is None else ms / 1000.0)

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget {self.max_nodes} exhausted", self.nodes)
        if self.max_seconds is not None and not self.nodes & 1023:
            if time.monotonic() - self._t0 > self.max_seconds:
                raise BudgetExhausted(f"time budget {self.max_seconds}s exhausted", self.nodes)

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._t0
