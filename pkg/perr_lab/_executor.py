from cached_property import cached_property
import concurrent.futures
from functools import partial
import logging
import multiprocessing
import os

from perr_lab.log import set_log_level


logger = logging.getLogger(__name__)

MULTIPROCESSING_DEFAULT_START_METHOD = "spawn"
CONCURRENCY_OPTIONS = (None, "processes", "threads")


class Executor:
    """
    Executor factory for sequential and concurrent.futures execution.

    Replicate batches only ever reach workers through ``map()``, which returns results
    in input order regardless of scheduling.
    """

    def __new__(self, *args, concurrency=None, **kwargs):
        if concurrency is None or kwargs.get("max_workers") == 1:
            return SequentialExecutor(*args, **kwargs)
        elif concurrency in ("processes", "threads"):
            return ConcurrentFuturesExecutor(*args, concurrency=concurrency, **kwargs)
        else:
            raise ValueError(
                f"concurrency must be one of {CONCURRENCY_OPTIONS}, not {concurrency}"
            )


class _ExecutorBase:
    """Shared context manager protocol and cancellation flag."""

    max_workers = 1
    cancelled = False

    def map(self, func, iterable, fargs=None, fkwargs=None):  # pragma: no cover
        raise NotImplementedError

    def cancel(self):
        """Drop every task not yet started; later map() calls return no results."""
        logger.debug(f"cancel tasks of {self}")
        self.cancelled = True

    def close(self):
        self.__exit__(None, None, None)

    def __enter__(self):
        """Enter context manager."""
        return self

    def __exit__(self, *args):
        """Exit context manager."""
        logger.debug(f"{self} closed")


class ConcurrentFuturesExecutor(_ExecutorBase):
    """Run tasks on a process or thread pool of concurrent.futures."""

    _pools = {
        "processes": concurrent.futures.ProcessPoolExecutor,
        "threads": concurrent.futures.ThreadPoolExecutor,
    }

    def __init__(
        self,
        *args,
        max_workers=None,
        concurrency="processes",
        multiprocessing_start_method=None,
        **kwargs,
    ):
        """Set attributes."""
        if concurrency not in self._pools:  # pragma: no cover
            raise ValueError("concurrency must either be 'processes' or 'threads'")
        self.concurrency = concurrency
        self.max_workers = max_workers or os.cpu_count() or 1
        self._pool_kwargs = dict(
            max_workers=self.max_workers,
            # worker processes do not inherit the level of the package logger
            initializer=set_log_level,
            initargs=(logging.getLogger("perr_lab").getEffectiveLevel(),),
        )
        if concurrency == "processes":
            self._pool_kwargs.update(
                mp_context=multiprocessing.get_context(
                    method=multiprocessing_start_method
                    or MULTIPROCESSING_DEFAULT_START_METHOD
                )
            )
        logger.debug(
            f"init ConcurrentFuturesExecutor using {concurrency} with "
            f"{self.max_workers} workers"
        )

    @cached_property
    def _pool(self):
        return self._pools[self.concurrency](**self._pool_kwargs)

    def map(self, func, iterable, fargs=None, fkwargs=None):
        """Apply func to every item and return results in input order."""
        if self.cancelled:
            return []
        func = partial(func, *(fargs or ()), **(fkwargs or {}))
        return list(self._pool.map(func, iterable))

    def cancel(self):
        super().cancel()
        if "_pool" in self.__dict__:
            self._pool.shutdown(wait=False, cancel_futures=True)

    def __exit__(self, *args):
        """Exit context manager."""
        if "_pool" in self.__dict__:
            self._pool.shutdown(wait=True)
        super().__exit__(*args)

    def __repr__(self):  # pragma: no cover
        return f"<ConcurrentFuturesExecutor ({self.concurrency}, {self.max_workers})>"


class SequentialExecutor(_ExecutorBase):
    """Run tasks one after another in the calling process."""

    def __init__(self, *args, **kwargs):
        """Set attributes."""
        logger.debug("init SequentialExecutor")

    def map(self, func, iterable, fargs=None, fkwargs=None):
        fargs = fargs or ()
        fkwargs = fkwargs or {}
        results = []
        for item in iterable:
            if self.cancelled:
                break
            results.append(func(*fargs, item, **fkwargs))
        return results

    def __repr__(self):  # pragma: no cover
        """Return string representation."""
        return "SequentialExecutor"
