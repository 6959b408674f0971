"""
Performance measurement utilities for the verification suite.

Each named check of the suite runs through :class:`SuiteProfiler`, which
records wall time, traced memory and the pass/fail outcome, and renders a
summary table at the end of the run.
"""

import logging
import time
import tracemalloc
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any


@dataclass
class StepProfile:
    """Profiling data and outcome of a single check."""
    step_name: str
    time_seconds: float = 0.0
    memory_peak_bytes: int = 0
    passed: bool | None = None
    detail: str = ""


@dataclass
class SuiteProfiler:
    """
    Profiler for the checks of a verification run.

    Attributes:
        steps (list[StepProfile]): Profiled checks in execution order.
        track_memory (bool): Whether to trace peak memory (default: True).

    Example:
        >>> profiler = SuiteProfiler()
        >>> profiler.start()
        >>> outcome = profiler.measure_step("ball remark", check_ball_remark)
        >>> profiler.stop()
        >>> profiler.log_summary_table()
    """
    steps: list[StepProfile] = field(default_factory=list)
    track_memory: bool = True
    _tracemalloc_started: bool = field(default=False, repr=False)

    def start(self):
        """Start memory tracing if enabled."""
        if self.track_memory and not tracemalloc.is_tracing():
            tracemalloc.start()
            self._tracemalloc_started = True

    def stop(self):
        """Stop memory tracing started by :meth:`start`."""
        if self._tracemalloc_started:
            tracemalloc.stop()
            self._tracemalloc_started = False

    def measure_step(self, step_name: str, func: Callable, *args, **kwargs) -> Any:
        """
        Run one check and record time, peak memory and outcome.

        The outcome is read from the ``passed`` and ``detail`` attributes of the
        returned object when present. Exceptions propagate after the failed step
        has been recorded.

        Args:
            step_name (str): Name of the check.
            func (callable): Check to run.
            *args: Positional arguments for the check.
            **kwargs: Keyword arguments for the check.

        Returns:
            The return value of the check.
        """
        if self.track_memory and tracemalloc.is_tracing():
            tracemalloc.reset_peak()

        start_time = time.perf_counter()
        profile = StepProfile(step_name=step_name)
        try:
            result = func(*args, **kwargs)
        except Exception as err:
            profile.passed = False
            profile.detail = f"{type(err).__name__}: {err}"
            raise
        else:
            profile.passed = getattr(result, "passed", None)
            profile.detail = getattr(result, "detail", "")
            return result
        finally:
            profile.time_seconds = time.perf_counter() - start_time
            if self.track_memory and tracemalloc.is_tracing():
                profile.memory_peak_bytes = tracemalloc.get_traced_memory()[1]
            self.steps.append(profile)

    def get_total_time(self) -> float:
        """Return total time across all measured steps."""
        return sum(step.time_seconds for step in self.steps)

    @property
    def all_passed(self) -> bool:
        return all(step.passed is not False for step in self.steps)

    @property
    def failed_steps(self) -> list[StepProfile]:
        return [step for step in self.steps if step.passed is False]

    def _format_memory(self, bytes_val: int) -> str:
        """Format memory value in human-readable format."""
        if bytes_val < 1024:
            return f"{bytes_val} B"
        elif bytes_val < 1024 * 1024:
            return f"{bytes_val / 1024:.2f} KB"
        else:
            return f"{bytes_val / (1024 * 1024):.2f} MB"

    def summary_table(self) -> str:
        """Formatted table of all checks: name, outcome, time and peak memory."""
        name_width = max([len(step.step_name) for step in self.steps] + [28]) + 2
        header = f"{'Check':<{name_width}} | {'Result':>6} | {'Time (s)':>10} | {'Peak memory':>12}"
        separator = "-" * len(header)
        lines = ["", "=" * len(header), "VERIFICATION SUITE SUMMARY", "=" * len(header), header, separator]
        for step in self.steps:
            outcome = {True: "PASS", False: "FAIL", None: "-"}[step.passed]
            lines.append(
                f"{step.step_name:<{name_width}} | {outcome:>6} | {step.time_seconds:>10.3f} | "
                f"{self._format_memory(step.memory_peak_bytes):>12}"
            )
        lines.append(separator)
        lines.append(f"{'TOTAL':<{name_width}} | {'':>6} | {self.get_total_time():>10.3f} | {'':>12}")
        lines.append("=" * len(header))
        return "\n".join(lines)

    def log_summary_table(self, logger: logging.Logger | None = None):
        """Log the summary table at INFO (root logger unless one is given)."""
        if not self.steps:
            return
        (logger or logging.getLogger()).info(self.summary_table())

    def get_summary_dict(self) -> dict:
        """Profiling data and outcomes for programmatic access."""
        return {
            'steps': [
                {
                    'step_name': step.step_name,
                    'passed': step.passed,
                    'detail': step.detail,
                    'time_seconds': step.time_seconds,
                    'memory_peak_bytes': step.memory_peak_bytes,
                }
                for step in self.steps
            ],
            'total_time_seconds': self.get_total_time(),
            'all_passed': self.all_passed,
        }
