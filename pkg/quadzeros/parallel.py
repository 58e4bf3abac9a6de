"""
Ordered work distribution for independent grid items
QUADZEROS_THREADS sets the default number of worker processes.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from loguru import logger

from quadzeros.config import load_settings

T = TypeVar('T')
R = TypeVar('R')


def worker_count(workers: Optional[int] = None) -> int:
    if workers is None:
        workers = load_settings().threads
    return max(1, int(workers))


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """map func over items; results come back in input order whatever the completion order

    func must be picklable (module-level function or functools.partial of one)
    when more than one worker is used.
    """
    items = list(items)
    n = worker_count(workers)
    if n == 1 or len(items) < 2:
        return [func(x) for x in items]
    chunksize = max(1, len(items) // (4 * n))
    logger.debug(f"Distributing {len(items)} items over {n} workers (chunksize {chunksize})")
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
