"""Wall-clock budgets for the exact searches."""

from __future__ import annotations

import time


class BudgetExceeded(Exception):
    pass


class Budget:
    """Deadline checked every ``stride`` ticks; ``None`` seconds means unlimited."""

    def __init__(self, seconds: float | None, stride: int = 512):
        self.seconds = seconds
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.stride = stride
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % self.stride == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded


class IndexResult:
    """Outcome of an exact index search (chromatic index or degree-coloring index).

    ``lower`` is proven; ``upper`` is backed by ``witness`` when one was
    found. The result is decided when the two coincide. ``certified`` records
    that an exhaustive search at ``value - 1`` found nothing.
    """

    __slots__ = ("lower", "upper", "witness", "certified", "nodes")

    def __init__(self, lower, upper, witness, certified, nodes=0):
        self.lower = lower
        self.upper = upper
        self.witness = witness
        self.certified = certified
        self.nodes = nodes

    @property
    def decided(self) -> bool:
        return self.upper is not None and self.lower == self.upper and self.witness is not None

    @property
    def value(self) -> int | None:
        return self.upper if self.decided else None

    def __repr__(self) -> str:
        if self.decided:
            return f"IndexResult(value={self.value}, certified={self.certified})"
        return f"IndexResult(undecided, bounds=[{self.lower}, {self.upper}])"
