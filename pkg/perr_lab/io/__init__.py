"""Functions for reading and writing configurations, cohorts and results."""

from perr_lab.io._cohort import COHORT_COLUMNS, read_cohort, write_cohort
from perr_lab.io._json import read_text, write_json
from perr_lab.io._path import fs_from_path, makedirs, path_exists, path_is_remote
from perr_lab.io._results import RESULTS_COLUMNS, read_results, write_results

__all__ = [
    "COHORT_COLUMNS",
    "RESULTS_COLUMNS",
    "fs_from_path",
    "makedirs",
    "path_exists",
    "path_is_remote",
    "read_cohort",
    "read_results",
    "read_text",
    "write_cohort",
    "write_json",
    "write_results",
]
