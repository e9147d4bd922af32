"""All pytest fixtures."""

import json
import os
import shutil

import pytest

from perr_lab import Cohort, DgpParams, IndividualRecord

SCRIPT_DIR = os.path.dirname(os.path.realpath(__file__))
TESTDATA_DIR = os.path.join(SCRIPT_DIR, "testdata")
TEMP_DIR = os.path.join(TESTDATA_DIR, "tmp")


# temporary directory for I/O tests
@pytest.fixture(autouse=True)
def perr_tmpdir():
    """Setup and teardown temporary directory."""
    shutil.rmtree(TEMP_DIR, ignore_errors=True)
    os.makedirs(TEMP_DIR)
    yield TEMP_DIR
    shutil.rmtree(TEMP_DIR, ignore_errors=True)


@pytest.fixture
def shared_records():
    """
    Twelve persons whose estimates are PERR_Prev = 4/3, PERR_Comp = 4 and RR = 2.

    Treated: four completers with (y1, y2) = (1, 1), (0, 1), (0, 0), (0, 0) and two
    non-completers with y1 = 1. Control: four completers with (1, 1), (1, 0), (0, 0),
    (0, 0) and two non-completers with y1 = 0.
    """
    return [
        IndividualRecord(0, 1, 1, 0, 1),
        IndividualRecord(0, 1, 0, 0, 1),
        IndividualRecord(0, 1, 0, 0, 0),
        IndividualRecord(0, 1, 0, 0, 0),
        IndividualRecord(0, 1, 1, 1, None),
        IndividualRecord(0, 1, 1, 1, None),
        IndividualRecord(0, 0, 1, 0, 1),
        IndividualRecord(0, 0, 1, 0, 0),
        IndividualRecord(0, 0, 0, 0, 0),
        IndividualRecord(0, 0, 0, 0, 0),
        IndividualRecord(0, 0, 0, 1, None),
        IndividualRecord(0, 0, 0, 1, None),
    ]


@pytest.fixture
def shared_cohort(shared_records):
    return Cohort.from_records(shared_records)


@pytest.fixture
def shared_cohort_csv():
    return os.path.join(TESTDATA_DIR, "shared_cohort.csv")


@pytest.fixture
def default_params():
    return DgpParams()


@pytest.fixture
def minimal_config():
    return os.path.join(TESTDATA_DIR, "minimal.json")


@pytest.fixture
def small_config():
    return os.path.join(TESTDATA_DIR, "small.json")


@pytest.fixture
def small_config_dict(small_config):
    with open(small_config) as src:
        return json.load(src)
