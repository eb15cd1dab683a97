"""
Thread-pool helpers for pixel-parallel work.

Work is split into contiguous chunks and results are reassembled in chunk order,
so the output never depends on the worker count.
"""
from __future__ import annotations
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

log = logging.getLogger("quadnet.utils.parallel")

THREADS_ENV = "QUADNET_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int | None = None) -> int:
    """
    Effective worker count: explicit value, else ``QUADNET_THREADS``, else the CPU count.
    """
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        if env:
            try:
                threads = int(env)
            except ValueError:
                log.warning("Ignoring non-integer %s=%r", THREADS_ENV, env)
                threads = None
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, int(threads))


def split_range(length: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(length)`` into at most ``parts`` contiguous (start, stop) chunks."""
    parts = max(1, min(parts, length)) if length > 0 else 1
    base, extra = divmod(length, parts)
    bounds = []
    start = 0
    for i in range(parts):
        stop = start + base + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: int | None = None) -> list[R]:
    """Apply ``fn`` to every item, in parallel when more than one worker is allowed; keeps order."""
    workers = min(resolve_threads(threads), max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
