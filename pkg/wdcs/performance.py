"""Stage timing for pipeline runs."""

import threading
import time
from contextlib import contextmanager
from functools import wraps
from typing import Callable, Dict, Iterator, List, Optional

from wdcs.logging_config import get_logger

logger = get_logger(__name__)


class PerformanceMonitor:
    """Record wall-clock durations per named stage."""

    def __init__(self):
        self.metrics: Dict[str, List[float]] = {}
        self.lock = threading.Lock()

    def record(self, operation: str, duration: float) -> None:
        """Record operation duration."""
        with self.lock:
            self.metrics.setdefault(operation, []).append(duration)

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time the enclosed block as one run of ``name``."""
        start_time = time.perf_counter()
        try:
            yield
        finally:
            duration = time.perf_counter() - start_time
            self.record(name, duration)
            logger.debug("Stage finished", stage=name, seconds=round(duration, 3))

    def totals(self) -> Dict[str, float]:
        """Summed seconds per stage, rounded for reports."""
        with self.lock:
            return {op: round(sum(d), 3) for op, d in self.metrics.items()}

    def get_stats(self, operation: str) -> Dict[str, float]:
        """Get statistics for operation."""
        with self.lock:
            durations = self.metrics.get(operation)
            if not durations:
                return {}
            return {
                "count": len(durations),
                "avg": sum(durations) / len(durations),
                "min": min(durations),
                "max": max(durations),
            }

    def clear(self) -> None:
        with self.lock:
            self.metrics.clear()


# Global performance monitor
performance_monitor = PerformanceMonitor()


def monitor_performance(operation_name: Optional[str] = None):
    """Decorator to record a function's duration in the global monitor."""

    def decorator(func: Callable):
        name = operation_name or f"{func.__module__}.{func.__name__}"

        @wraps(func)
        def wrapper(*args, **kwargs):
            with performance_monitor.stage(name):
                return func(*args, **kwargs)

        return wrapper

    return decorator
