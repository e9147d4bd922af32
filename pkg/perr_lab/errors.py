"""Errors and Warnings."""


class InvalidParams(ValueError):
    """Raised when generator parameters or a scenario are invalid."""

    def __init__(self, field, msg):
        self.field = field
        self.msg = msg
        super().__init__(f"{field}: {msg}")

    def __reduce__(self):
        return self.__class__, (self.field, self.msg)


class NoSolution(ValueError):
    """Raised when a dropout target cannot be reached by the intercept search."""


class MalformedRecord(ValueError):
    """Raised when a record breaks the observability rule of y2 and m2."""


class TooManyFailures(RuntimeError):
    """Raised when too many bootstrap resamples yield no estimate."""


class ParseError(ValueError):
    """Raised when a run configuration cannot be parsed."""


class ValidationError(ValueError):
    """Raised when a run configuration value is invalid."""

    def __init__(self, field, msg):
        self.field = field
        self.msg = msg
        super().__init__(f"{field}: {msg}")

    def __reduce__(self):
        return self.__class__, (self.field, self.msg)


class SchemaError(ValueError):
    """Raised when a cohort file does not have the expected columns."""


class RowError(ValueError):
    """Raised when a cohort file row is invalid."""

    def __init__(self, row, msg):
        self.row = row
        self.msg = msg
        super().__init__(f"row {row}: {msg}")

    def __reduce__(self):
        return self.__class__, (self.row, self.msg)


class ResultsIOError(IOError):
    """Raised when a cohort, results or figure file cannot be read or written."""


class EmptyInput(ValueError):
    """Raised when a figure is requested without any rows."""


class AllReplicatesFailed(UserWarning):
    """Emitted when no replicate of a grid cell produced an estimate."""
