from enum import Enum
import logging
from typing import Callable

from perr_lab._executor import Executor
from perr_lab._timer import Timer

logger = logging.getLogger(__name__)


class Status(str, Enum):
    pending = "pending"
    running = "running"
    finished = "finished"
    cancelled = "cancelled"


class Job:
    """
    Run a generator function on an Executor and expose its output with known length.

    The generator function gets the Executor as ``executor`` keyword argument and yields
    one item per finished task (e.g. the SummaryRows of one grid cell). ``done`` counts
    the items yielded so far and ``timer`` measures the wall time of the run.
    ``Job.cancel()`` lets the Executor drop all remaining replicates.
    """

    def __init__(
        self,
        func: Callable,
        fargs: tuple = None,
        fkwargs: dict = None,
        as_iterator: bool = False,
        total: int = None,
        executor_concurrency: str = "processes",
        executor_kwargs: dict = None,
    ):
        self.func = func
        self.fargs = fargs or ()
        self.fkwargs = fkwargs or {}
        self.status = Status.pending
        self.executor = None
        self.executor_concurrency = executor_concurrency
        self.executor_kwargs = executor_kwargs or {}
        self.done = 0
        self.timer = Timer()
        self._total = total
        self._as_iterator = as_iterator
        if not as_iterator:
            self._results = list(self._run())

    def _run(self):
        if self._total == 0:
            self.status = Status.finished
            return
        with self.timer, Executor(
            concurrency=self.executor_concurrency, **self.executor_kwargs
        ) as self.executor:
            self.status = Status.running
            for item in self.func(*self.fargs, executor=self.executor, **self.fkwargs):
                self.done += 1
                yield item
            if self.status is Status.running:
                self.status = Status.finished
        logger.debug(f"{self} after {self.timer}")

    def cancel(self):
        if self.executor is None:
            raise ValueError("nothing to cancel because no executor is running")
        self.executor.cancel()
        self.status = Status.cancelled

    def __len__(self):
        return self._total

    def __iter__(self):
        if self._as_iterator:
            yield from self._run()
        else:
            yield from self._results

    def __repr__(self):
        return f"<{self.status.value} Job, {self.done} of {self._total} tasks done>"
