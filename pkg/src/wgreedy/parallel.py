"""Order-preserving map over a thread pool.

Results always come back in input order, so any reduction done on them is
independent of the worker count.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def chunks(seq: Sequence[T], parts: int) -> list[Sequence[T]]:
    parts = max(1, min(parts, len(seq)))
    size, extra = divmod(len(seq), parts)
    out, i = [], 0
    for p in range(parts):
        j = i + size + (1 if p < extra else 0)
        out.append(seq[i:j])
        i = j
    return out
