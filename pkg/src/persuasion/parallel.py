"""Run independent sweep shards inline or on a process pool."""
from __future__ import annotations

from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Callable, Sequence


def run_tasks(
    fn: Callable, tasks: Sequence, workers: int = 1, executor: Executor | None = None
) -> list:
    """Results come back in task order whatever the pool does."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    if executor is not None:
        return list(executor.map(fn, tasks))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))
