"""Results CSV files holding one SummaryRow per line."""

import logging
import math

import pandas as pd

from perr_lab.errors import ResultsIOError, SchemaError
from perr_lab.harness import SummaryRow
from perr_lab.io._path import fs_from_path, makedirs, parent_dir

logger = logging.getLogger(__name__)

RESULTS_COLUMNS = (
    "scenario",
    "dropout_target",
    "estimator",
    "mean",
    "p2_5",
    "p97_5",
    "n_used",
    "n_failed",
    "oracle",
)
FLOAT_FORMAT = "%.6g"


def _results_frame(rows):
    rows = sorted(rows, key=lambda row: row.sort_key)
    return pd.DataFrame(
        [
            (
                row.scenario_id,
                row.dropout_target,
                row.estimator,
                row.mean,
                row.p2_5,
                row.p97_5,
                row.n_used,
                row.n_failed,
                row.oracle,
            )
            for row in rows
        ],
        columns=list(RESULTS_COLUMNS),
    ).astype(
        {
            "scenario": "int64",
            "dropout_target": "float64",
            "mean": "float64",
            "p2_5": "float64",
            "p97_5": "float64",
            "n_used": "int64",
            "n_failed": "int64",
            "oracle": "float64",
        }
    )


def write_results(rows, path, fs=None, **kwargs):
    """
    Write SummaryRows as CSV file.

    Rows are sorted by scenario, dropout target and estimator; floats are rendered
    with 6 significant digits and missing values as empty fields.

    Raises
    ------
    ResultsIOError if the file cannot be written.
    """
    frame = _results_frame(rows)
    fs = fs or fs_from_path(path, **kwargs)
    try:
        makedirs(parent_dir(path), fs=fs)
        with fs.open(path, "w") as dst:
            frame.to_csv(dst, index=False, float_format=FLOAT_FORMAT, na_rep="")
    except OSError as e:
        raise ResultsIOError(f"cannot write results {path}: {e}")
    logger.debug(f"wrote {len(frame)} rows to {path}")


def _optional(value):
    return None if math.isnan(value) else float(value)


def read_results(path, fs=None, **kwargs):
    """
    Read SummaryRows from a results CSV file.

    Raises
    ------
    SchemaError if the header differs from the results header.
    ResultsIOError if the file cannot be read.
    """
    fs = fs or fs_from_path(path, **kwargs)
    try:
        with fs.open(path, "r") as src:
            frame = pd.read_csv(src, dtype={"estimator": str})
    except pd.errors.EmptyDataError:
        raise SchemaError(f"{path} has no header")
    except OSError as e:
        raise ResultsIOError(f"cannot read results {path}: {e}")
    if tuple(frame.columns) != RESULTS_COLUMNS:
        raise SchemaError(
            f"{path} must have header {','.join(RESULTS_COLUMNS)}, "
            f"not {','.join(map(str, frame.columns))}"
        )
    return [
        SummaryRow(
            scenario_id=int(record.scenario),
            dropout_target=float(record.dropout_target),
            estimator=record.estimator,
            mean=_optional(record.mean),
            p2_5=_optional(record.p2_5),
            p97_5=_optional(record.p97_5),
            n_used=int(record.n_used),
            n_failed=int(record.n_failed),
            oracle=_optional(record.oracle),
        )
        for record in frame.itertuples(index=False)
    ]
