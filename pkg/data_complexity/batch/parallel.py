from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar
import logging

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(func: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> List[R]:
    """
    Apply func to every item with at most `jobs` concurrent workers.

    Results come back in input order whatever the completion order. Workers are
    threads; the distance and spanning-tree kernels release the GIL.

    Args:
        func: Work for one item; must not share mutable state across items
        items: Work items
        jobs: Maximum concurrent workers

    Returns:
        List[R]: func(item) for each item, in input order
    """
    if jobs < 1:
        raise ValueError("jobs must be positive")
    if jobs == 1 or len(items) <= 1:
        return [func(item) for item in items]
    workers = min(jobs, len(items))
    logger.debug(f"running {len(items)} items on {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
