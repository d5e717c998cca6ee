"""Deterministic fan-out of independent sweep points.

COHLIM_THREADS caps the worker count (default 1, i.e. sequential);
results are always assembled in input order so parallel runs emit the
same bytes as sequential ones.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV_VAR = "COHLIM_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map fn over items, possibly with threads, preserving order."""
    seq: Sequence[T] = list(items)
    workers = min(worker_count(), len(seq)) if seq else 1
    if workers <= 1:
        return [fn(item) for item in seq]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seq))
