"""
Cohort CSV files with header ``id,x,y1,m2,y2``.

The post-period outcome ``y2`` is an empty field for non-completers (``m2 = 1``). The
confounder is not part of the file format, real data do not measure it.
"""

import logging
import warnings

import numpy as np
import numpy.ma as ma
import pandas as pd

from perr_lab.cohort import Cohort
from perr_lab.errors import ResultsIOError, RowError, SchemaError
from perr_lab.io._path import fs_from_path, makedirs, parent_dir

logger = logging.getLogger(__name__)

COHORT_COLUMNS = ("id", "x", "y1", "m2", "y2")
BINARY = ("0", "1")


def _first_invalid_row(frame):
    checks = [
        (~frame[column].isin(BINARY), f"{column} must be 0 or 1")
        for column in ("x", "y1", "m2")
    ]
    checks.append(
        (
            (frame.m2 == "1") & (frame.y2 != ""),
            "y2 must be empty for a non-completer (m2 = 1)",
        )
    )
    checks.append(
        (
            (frame.m2 == "0") & ~frame.y2.isin(BINARY),
            "y2 must be 0 or 1 for a completer (m2 = 0)",
        )
    )
    first = None
    for invalid, msg in checks:
        positions = np.flatnonzero(invalid.to_numpy())
        if positions.size and (first is None or positions[0] < first[0]):
            first = (int(positions[0]), msg)
    return first


def _binary(column):
    return column.to_numpy().astype(str).astype(np.int8)


def read_cohort(path, fs=None, **kwargs) -> Cohort:
    """
    Read and validate a cohort CSV file.

    Parameters
    ----------
    path : str
        Local or remote path.

    Returns
    -------
    Cohort
        Iterating it yields one IndividualRecord per row; the confounder is set to 0.

    Raises
    ------
    SchemaError if the header does not consist of exactly id, x, y1, m2 and y2.
    RowError with the 1-based data row number if a row holds invalid values.
    ResultsIOError if the file cannot be read.
    """
    fs = fs or fs_from_path(path, **kwargs)
    try:
        with fs.open(path, "r") as src:
            # no header inference, so rows wider than the header fail to parse
            frame = pd.read_csv(
                src, header=None, index_col=False, dtype=str, keep_default_na=False
            )
    except pd.errors.EmptyDataError:
        raise SchemaError(f"{path} has no header, expected {','.join(COHORT_COLUMNS)}")
    except pd.errors.ParserError as e:
        raise SchemaError(f"{path} cannot be parsed: {e}")
    except OSError as e:
        raise ResultsIOError(f"cannot read cohort {path}: {e}")
    columns = [str(column).strip() for column in frame.iloc[0]]
    frame = frame.iloc[1:].reset_index(drop=True)
    missing = [c for c in COHORT_COLUMNS if c not in columns]
    extra = [c for c in columns if c not in COHORT_COLUMNS]
    if missing or extra or len(columns) != len(COHORT_COLUMNS):
        raise SchemaError(
            f"{path} must have columns {','.join(COHORT_COLUMNS)}; "
            f"missing: {missing}, unexpected: {extra}"
        )
    frame.columns = columns
    if frame.empty:
        warnings.warn(UserWarning(f"{path} contains no records"))
        return Cohort.empty()
    frame = frame.apply(lambda column: column.str.strip())
    invalid = _first_invalid_row(frame)
    if invalid is not None:
        position, msg = invalid
        raise RowError(position + 1, f"{msg}: {','.join(frame.iloc[position])}")
    m2 = _binary(frame.m2)
    y2 = np.where(m2 == 1, "0", frame.y2.to_numpy()).astype(np.int8)
    logger.debug(f"read {len(frame)} records from {path}")
    return Cohort(
        c=np.zeros(len(frame), dtype=np.int8),
        x=_binary(frame.x),
        y1=_binary(frame.y1),
        m2=m2,
        y2=ma.masked_array(y2, mask=m2 == 1),
        ids=frame.id.to_numpy(),
    )


def write_cohort(cohort: Cohort, path, fs=None, **kwargs):
    """
    Write cohort as CSV file; persons without ids are numbered from 1.

    Raises
    ------
    ResultsIOError if the file cannot be written.
    """
    fs = fs or fs_from_path(path, **kwargs)
    ids = (
        np.arange(1, len(cohort) + 1).astype(str)
        if cohort.ids is None
        else cohort.ids.astype(str)
    )
    frame = pd.DataFrame(
        {
            "id": ids,
            "x": cohort.x,
            "y1": cohort.y1,
            "m2": cohort.m2,
            "y2": np.where(cohort.m2 == 1, "", cohort.y2.filled(0).astype(str)),
        },
        columns=list(COHORT_COLUMNS),
    )
    try:
        makedirs(parent_dir(path), fs=fs)
        with fs.open(path, "w") as dst:
            frame.to_csv(dst, index=False)
    except OSError as e:
        raise ResultsIOError(f"cannot write cohort {path}: {e}")
    logger.debug(f"wrote {len(frame)} records to {path}")
