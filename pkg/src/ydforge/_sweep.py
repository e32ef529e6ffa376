"""Deterministic sweeps over basis tuples, optionally spread over processes.

A sweep looks for the lexicographically first tuple whose difference vector
is nonzero.  Worker processes only report the position of their first
failure; the parent recomputes that difference itself, so the result does
not depend on ``jobs``.
"""

from __future__ import annotations

import multiprocessing
import os
from typing import Callable, Hashable, Sequence

from .scalars import Scalar

Diff = dict[Hashable, Scalar]
DiffFn = Callable[[tuple[int, ...]], Diff]

_ACTIVE: tuple[DiffFn, Sequence[tuple[int, ...]]] | None = None


def default_jobs() -> int:
    value = os.environ.get("YDFORGE_JOBS", "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def _scan(bounds: tuple[int, int]) -> int | None:
    assert _ACTIVE is not None
    fn, tuples = _ACTIVE
    for position in range(*bounds):
        if fn(tuples[position]):
            return position
    return None


def first_failure(fn: DiffFn, tuples: Sequence[tuple[int, ...]], jobs: int | None = None) -> tuple[tuple[int, ...], Diff] | None:
    """Return ``(tuple, diff)`` for the first failing tuple, or ``None``."""
    jobs = default_jobs() if jobs is None else max(1, jobs)
    position: int | None = None
    if jobs > 1 and len(tuples) > 64 and "fork" in multiprocessing.get_all_start_methods():
        global _ACTIVE
        _ACTIVE = (fn, tuples)
        step = max(1, len(tuples) // (jobs * 4))
        chunks = [(start, min(start + step, len(tuples))) for start in range(0, len(tuples), step)]
        try:
            with multiprocessing.get_context("fork").Pool(jobs) as pool:
                hits = [hit for hit in pool.map(_scan, chunks) if hit is not None]
        finally:
            _ACTIVE = None
        position = min(hits) if hits else None
    else:
        for index, item in enumerate(tuples):
            if fn(item):
                position = index
                break
    if position is None:
        return None
    item = tuples[position]
    return item, fn(item)
