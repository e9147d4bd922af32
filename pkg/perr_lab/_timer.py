import time


class Timer:
    """
    Context manager measuring wall time of a block.

    Examples
    --------
    >>> with Timer() as t:
    ...     run_experiment(grid)
    >>> print(f"finished in {t}")
    """

    def __init__(self, elapsed=0.0, str_round=3):
        self._elapsed = elapsed
        self._str_round = str_round
        self.start = None
        self.end = None

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *args):
        self.end = time.perf_counter()
        self._elapsed = self.end - self.start

    @property
    def elapsed(self):
        if self.start is not None and self.end is None:
            return time.perf_counter() - self.start
        return self._elapsed

    def __str__(self):
        minutes, seconds = divmod(self.elapsed, 60)
        hours, minutes = divmod(int(minutes), 60)
        if hours:
            return f"{hours}h {minutes}m {int(seconds)}s"
        elif minutes:
            return f"{minutes}m {int(seconds)}s"
        return f"{round(seconds, self._str_round)}s"

    def __repr__(self):
        return f"Timer(start={self.start}, end={self.end}, elapsed={self})"
