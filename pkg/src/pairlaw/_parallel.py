"""Deterministic chunked execution.

Work is split into chunks whose size never depends on the thread count,
and results come back in submission order, so any reduction over them is
reproducible for one thread or many.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

THREADS_ENV = "PAIRLAW_THREADS"


def effective_threads(threads: int | None) -> int:
    """Resolve a thread count: explicit argument, then the PAIRLAW_THREADS
    environment variable, then the machine's CPU count."""
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        if env:
            threads = int(env)
        else:
            threads = os.cpu_count() or 1
    return max(1, threads)


def map_ordered(fn: Callable[..., T], args_list: Sequence[tuple], threads: int | None) -> list[T]:
    """Apply fn to each argument tuple, in order, possibly concurrently.

    The output list order matches args_list regardless of scheduling, and a
    single-thread run executes in the caller's thread with no pool at all.
    """
    n = effective_threads(threads)
    if n == 1 or len(args_list) <= 1:
        return [fn(*args) for args in args_list]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda args: fn(*args), args_list))
