"""
Person-level cohort data.

A cohort is stored column-wise as NumPy arrays. The post-period outcome ``y2`` is a
masked array whose mask is exactly ``m2 == 1``: the outcome of non-completers is never
observed and never exposed.
"""

import logging
from typing import Iterable, NamedTuple, Optional

import numpy as np
import numpy.ma as ma

from perr_lab.errors import MalformedRecord

logger = logging.getLogger(__name__)


class IndividualRecord(NamedTuple):
    """One person's realized values; ``y2`` is None for non-completers."""

    c: int
    x: int
    y1: int
    m2: int
    y2: Optional[int] = None


def check_record(record):
    """
    Return record if it satisfies the binary and observability rules.

    Raises
    ------
    MalformedRecord if a value is not binary, or if y2 is present although m2 = 1 or
    missing although m2 = 0.
    """
    for name in ("c", "x", "y1", "m2"):
        if getattr(record, name) not in (0, 1):
            raise MalformedRecord(f"{name} must be 0 or 1: {record}")
    if record.m2 == 1 and record.y2 is not None:
        raise MalformedRecord(f"y2 observed for a non-completer: {record}")
    if record.m2 == 0 and record.y2 not in (0, 1):
        raise MalformedRecord(f"y2 must be 0 or 1 for a completer: {record}")
    return record


def _binary_column(name, values):
    values = np.asarray(values)
    if values.ndim != 1:
        raise MalformedRecord(f"{name} must be one-dimensional")
    if values.size and not np.isin(values, (0, 1)).all():
        raise MalformedRecord(f"{name} must only contain 0 and 1")
    return values.astype(np.int8)


class Cohort:
    """
    Column-wise collection of IndividualRecords.

    Parameters
    ----------
    c, x, y1, m2 : array-like of 0/1
        Confounder, treatment group, prior event and post-period dropout.
    y2 : array-like or numpy.ma.MaskedArray
        Post-period event. Entries of non-completers must be masked (or are masked when
        a plain array is given).
    ids : array-like, optional
        Person identifiers, only carried along for file export.
    validate : bool
        Check binary values and the observability mask (default: True).
    """

    def __init__(self, c, x, y1, m2, y2, ids=None, validate=True):
        if validate:
            self.c = _binary_column("c", c)
            self.x = _binary_column("x", x)
            self.y1 = _binary_column("y1", y1)
            self.m2 = _binary_column("m2", m2)
            lengths = {len(a) for a in (self.c, self.x, self.y1, self.m2, y2)}
            if len(lengths) != 1:
                raise MalformedRecord(f"columns have different lengths: {lengths}")
            self.y2 = self._masked_y2(y2, self.m2)
        else:
            self.c, self.x, self.y1, self.m2, self.y2 = c, x, y1, m2, y2
        self.ids = None if ids is None else np.asarray(ids, dtype=object)

    @staticmethod
    def _masked_y2(y2, m2):
        dropout = m2 == 1
        if isinstance(y2, ma.MaskedArray):
            if not np.array_equal(ma.getmaskarray(y2), dropout):
                raise MalformedRecord("y2 must be masked exactly where m2 = 1")
            observed = y2.data[~dropout]
        else:
            observed = np.asarray(y2)[~dropout]
        if observed.size and not np.isin(observed, (0, 1)).all():
            raise MalformedRecord("y2 must only contain 0 and 1 for completers")
        data = np.zeros(len(m2), dtype=np.int8)
        data[~dropout] = observed
        return ma.masked_array(data, mask=dropout)

    @classmethod
    def from_records(cls, records: Iterable[IndividualRecord], ids=None):
        """Build a cohort from IndividualRecords."""
        records = [check_record(IndividualRecord(*r)) for r in records]
        columns = np.array(
            [(r.c, r.x, r.y1, r.m2, 0 if r.y2 is None else r.y2) for r in records],
            dtype=np.int8,
        ).reshape(-1, 5)
        c, x, y1, m2, y2 = columns.T
        return cls(
            c,
            x,
            y1,
            m2,
            ma.masked_array(y2, mask=m2 == 1),
            ids=ids,
        )

    @classmethod
    def empty(cls):
        return cls.from_records([])

    def take(self, indices):
        """Return a new cohort consisting of the persons at indices (with repeats)."""
        return Cohort(
            self.c[indices],
            self.x[indices],
            self.y1[indices],
            self.m2[indices],
            self.y2[indices],
            ids=None if self.ids is None else self.ids[indices],
            validate=False,
        )

    @property
    def dropout_fraction(self):
        """Realized fraction of non-completers (0.0 for an empty cohort)."""
        return float(self.m2.mean()) if len(self) else 0.0

    def __len__(self):
        return len(self.m2)

    def __iter__(self):
        y2 = self.y2.filled(-1)
        for c, x, y1, m2, y2_value in zip(self.c, self.x, self.y1, self.m2, y2):
            yield IndividualRecord(
                int(c), int(x), int(y1), int(m2), None if m2 else int(y2_value)
            )

    def __repr__(self):
        return f"<Cohort of {len(self)} persons, {int(self.m2.sum())} non-completers>"
