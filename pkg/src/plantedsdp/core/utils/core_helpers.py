"""A module to contain core helper functions for the program."""

__docformat__ = "numpy"

import concurrent.futures
from collections.abc import Callable, Iterable
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    max_workers: int = 1,
    *,
    use_processes: bool = False,
) -> list[R]:
    """
    Apply `func` to every item on a bounded pool, keeping input order.

    Parameters
    ----------
    func : Callable[[T], R]
        The function to apply. Must be picklable when `use_processes` is True.
    items : Iterable[T]
        Work items.
    max_workers : int, default 1
        Pool size. With 1 worker the items run sequentially in this thread.
    use_processes : bool, default False
        If True, use ProcessPoolExecutor, otherwise use ThreadPoolExecutor.

    Returns
    -------
    list[R]
        Results in the order of `items`, whatever order the workers finished.
    """
    work = list(items)
    if max_workers <= 1 or len(work) <= 1:
        return [func(item) for item in work]

    executor_class = (
        concurrent.futures.ProcessPoolExecutor
        if use_processes
        else concurrent.futures.ThreadPoolExecutor
    )
    results: list[R | None] = [None] * len(work)
    with executor_class(max_workers=max_workers) as executor:
        futures = {
            executor.submit(func, item): idx for idx, item in enumerate(work)
        }
        for future in concurrent.futures.as_completed(futures):
            results[futures[future]] = future.result()

    return results  # type: ignore[return-value]
