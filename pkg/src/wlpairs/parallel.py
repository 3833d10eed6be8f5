"""Order-preserving parallel map used by the batch commands."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "WLPAIRS_WORKERS"


def worker_count(explicit: int | None = None) -> int:
    """Explicit value, else ``$WLPAIRS_WORKERS``, else 1."""
    if explicit is not None:
        n = explicit
    else:
        raw = os.environ.get(WORKERS_ENV, "1").strip() or "1"
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValueError("worker count must be >= 1")
    return n


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int = 1, chunksize: int = 4) -> list[R]:
    """``list(map(fn, items))``, fanned out over processes when ``workers > 1``.

    Results come back in input order, so callers see the same output for any
    worker count. ``fn`` must be a picklable top-level callable.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunksize))
