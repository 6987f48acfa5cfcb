"""External merge sort with pickle-spilled runs."""

import errno
import heapq
import itertools
import pickle
import shutil
import tempfile
from typing import IO, Any, Callable, Iterable, Iterator, List, Optional, TypeVar

from wdcs.errors import SpillError
from wdcs.logging_config import get_logger

logger = get_logger(__name__)

T = TypeVar("T")

DEFAULT_CHUNK_SIZE = 1_000_000
_BLOCK = 8192


def external_sort(
    items: Iterable[T],
    key: Callable[[T], Any],
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    tmpdir: Optional[str] = None,
) -> Iterator[T]:
    """Yield ``items`` sorted by ``key`` holding at most ``chunk_size`` in memory.

    The sort is stable: items with equal keys come out in input order.
    Input that fits in one chunk never touches disk.
    """
    iterator = iter(items)
    first = sorted(itertools.islice(iterator, chunk_size), key=key)
    if len(first) < chunk_size:
        yield from first
        return

    runs: List[IO[bytes]] = []
    try:
        runs.append(_spill(first, tmpdir))
        del first
        while True:
            chunk = sorted(itertools.islice(iterator, chunk_size), key=key)
            if not chunk:
                break
            runs.append(_spill(chunk, tmpdir))
        logger.debug("External sort merging runs", runs=len(runs), chunk_size=chunk_size)
        for run in runs:
            run.seek(0)
        yield from heapq.merge(*(_load(run) for run in runs), key=key)
    finally:
        for run in runs:
            run.close()


def _spill(chunk: List[T], tmpdir: Optional[str]) -> IO[bytes]:
    directory = tmpdir or tempfile.gettempdir()
    run = None
    try:
        run = tempfile.TemporaryFile(dir=directory)
        for start in range(0, len(chunk), _BLOCK):
            pickle.dump(chunk[start : start + _BLOCK], run, protocol=pickle.HIGHEST_PROTOCOL)
        run.flush()
        return run
    except OSError as e:
        if run is not None:
            run.close()
        free = _free_bytes(directory)
        reason = "no space left on device" if e.errno == errno.ENOSPC else (e.strerror or str(e))
        raise SpillError(directory, free, reason) from e


def _load(run: IO[bytes]) -> Iterator[T]:
    while True:
        try:
            block = pickle.load(run)
        except EOFError:
            return
        yield from block


def _free_bytes(directory: str) -> Optional[int]:
    try:
        return shutil.disk_usage(directory).free
    except OSError:
        return None
