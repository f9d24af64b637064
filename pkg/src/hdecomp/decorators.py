"""This module contains custom function decorators."""

import functools
import logging as log
import time
from dataclasses import dataclass


@dataclass
class RuntimeStats:
    """Cumulative runtime of a decorated function."""

    calls: int = 0
    runtime_ms: float = 0.0


cumulative_runtime: dict[str, RuntimeStats] = {}


def timing(func):
    """Decorator to time function calls and track cumulative function runtime."""

    @functools.wraps(func)
    def wrap(*args, **kw):
        time_start = time.perf_counter()
        result = func(*args, **kw)
        runtime = (time.perf_counter() - time_start) * 1000
        name = func.__qualname__
        log.debug("execution time of function %s: %.1f ms.", name, runtime)
        stats = cumulative_runtime.setdefault(name, RuntimeStats())
        stats.calls += 1
        stats.runtime_ms += runtime
        return result

    return wrap


def log_runtime_stats():
    """Output runtime statistics collected via @timing decorator."""
    for name, stats in sorted(cumulative_runtime.items()):
        log.info(
            "Cumulative runtime of %s: %.3fs over %d call(s)",
            name,
            stats.runtime_ms / 1000,
            stats.calls,
        )
