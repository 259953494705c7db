"""
Step Budget
Cooperative timeout for the cut set engines.
"""

import time
from typing import Optional


class BudgetExceeded(RuntimeError):
    """Raised by StepBudget.tick when the step or time budget is spent."""

    def __init__(self, steps: int, elapsed: float):
        super().__init__(f"budget exceeded after {steps} steps ({elapsed:.3f}s)")
        self.steps = steps
        self.elapsed = elapsed


class StepBudget:
    """
    Counts engine steps and enforces a deadline without preempting the engine.

    The clock is only read every `check_every` steps, so a tick costs one
    addition and one comparison in the common case.
    """

    def __init__(
        self,
        timeout: Optional[float] = None,
        max_steps: Optional[int] = None,
        check_every: int = 2048
    ):
        """
        Args:
            timeout: Wall-clock budget in seconds (None = unlimited)
            max_steps: Step budget (None = unlimited)
            check_every: Steps between two clock reads
        """
        if timeout is not None and timeout <= 0:
            raise ValueError(f"timeout must be positive, got {timeout}")
        self.timeout = timeout
        self.max_steps = max_steps
        self.check_every = check_every
        self.steps = 0
        self.started = time.monotonic()
        self.deadline = self.started + timeout if timeout is not None else None
        self._next_check = check_every

    @classmethod
    def unlimited(cls) -> "StepBudget":
        return cls()

    def tick(self, n: int = 1):
        """Account for n steps, raising BudgetExceeded when over budget."""
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise BudgetExceeded(self.steps, self.elapsed)
        if self.deadline is not None and self.steps >= self._next_check:
            self._next_check = self.steps + self.check_every
            if time.monotonic() > self.deadline:
                raise BudgetExceeded(self.steps, self.elapsed)

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    @property
    def remaining(self) -> Optional[float]:
        if self.deadline is None:
            return None
        return max(0.0, self.deadline - time.monotonic())
