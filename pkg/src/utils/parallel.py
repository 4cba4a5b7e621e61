"""Trial-level parallelism with results returned in trial order."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


def map_trials(worker: Callable[[int], T], trials: int, jobs: int = 1) -> List[T]:
    """Runs worker(trial) for trial = 0..trials-1.

    Every trial derives its own random stream from its index, so the result list is the
    same for any `jobs`. The worker must be picklable (a module-level function or a
    functools.partial of one) when jobs > 1.
    """
    if jobs <= 1 or trials <= 1:
        return [worker(trial) for trial in range(trials)]
    logger.debug(f"Running {trials} trials on {jobs} processes.")
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(worker, range(trials), chunksize=max(1, trials // (4 * jobs))))
