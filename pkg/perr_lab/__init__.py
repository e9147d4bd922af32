import logging

from perr_lab._executor import Executor
from perr_lab._processing import Job
from perr_lab._timer import Timer
from perr_lab.cohort import Cohort, IndividualRecord
from perr_lab.dgp import (
    DgpParams,
    ScenarioSpec,
    calibrate_dropout_intercept,
    enumerate_population,
    sample_cohort,
)
from perr_lab.estimators import (
    Failure,
    bootstrap_ci,
    estimate,
    perr_comp,
    perr_prev,
    relative_risk,
    summarize_cohort,
    wald_ci,
)
from perr_lab.harness import ExperimentGrid, SummaryRow, run_experiment


__all__ = [
    "Cohort",
    "DgpParams",
    "Executor",
    "ExperimentGrid",
    "Failure",
    "IndividualRecord",
    "Job",
    "ScenarioSpec",
    "SummaryRow",
    "Timer",
    "bootstrap_ci",
    "calibrate_dropout_intercept",
    "enumerate_population",
    "estimate",
    "perr_comp",
    "perr_prev",
    "relative_risk",
    "run_experiment",
    "sample_cohort",
    "summarize_cohort",
    "wald_ci",
]
__version__ = "0.1"


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())
