"""Opt-in parallel map for per-paper computations.

SLUMBER_THREADS picks the worker count (0 or unset = one per CPU). Results
always come back in input order. Small batches run sequentially: the
per-item work here is microseconds of pure Python, so thread fan-out only
pays off when a caller pushes very large item counts through.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from .errors import ConfigError

T = TypeVar("T")
R = TypeVar("R")

SEQUENTIAL_CUTOFF = 50_000


def worker_count() -> int:
    raw = os.environ.get("SLUMBER_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"SLUMBER_THREADS={raw!r} is not an integer") from None
    if n < 0:
        raise ConfigError(f"SLUMBER_THREADS={n} must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map fn over items, preserving order; thread fan-out for large batches."""
    batch = list(items)
    workers = worker_count()
    if workers == 1 or len(batch) < SEQUENTIAL_CUTOFF:
        return [fn(item) for item in batch]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, batch))
