import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import ConfigError

THREADS_ENV = "FRACDIM_THREADS"


def worker_count() -> int:
    """Thread cap from ``FRACDIM_THREADS``, else the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def map_column_blocks(fn, a: np.ndarray, min_block: int = 64) -> np.ndarray:
    """Apply ``fn`` to column blocks of ``a`` on a thread pool and reassemble.

    ``fn`` must treat columns independently, so the result does not depend
    on how the columns are split.
    """
    workers = min(worker_count(), max(1, a.shape[1] // min_block))
    if workers == 1:
        return fn(a)
    blocks = np.array_split(np.arange(a.shape[1]), workers)
    with ThreadPoolExecutor(workers) as ex:
        parts = list(ex.map(lambda ix: fn(np.ascontiguousarray(a[:, ix])), blocks))
    return np.hstack(parts)
