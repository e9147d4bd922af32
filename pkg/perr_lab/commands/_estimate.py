import logging
from typing import Dict, NamedTuple, Optional, Union

import numpy as np

from perr_lab.cohort import Cohort
from perr_lab.estimators import (
    ESTIMATORS,
    BootstrapInterval,
    CohortSummary,
    EstimateSet,
    WaldInterval,
    bootstrap_ci,
    estimate as estimate_all,
    summarize_cohort,
    wald_ci,
)
from perr_lab.io import read_cohort

logger = logging.getLogger(__name__)


class EstimateReport(NamedTuple):
    """Estimates of a cohort together with their confidence intervals."""

    n_persons: int
    summary: CohortSummary
    estimates: EstimateSet
    wald: Dict[str, Union[WaldInterval, object]]
    bootstrap: Optional[Dict[str, BootstrapInterval]] = None


def estimate(
    cohort: Union[str, Cohort],
    bootstrap: int = None,
    level: float = 0.95,
    seed: int = None,
    max_failure_fraction: float = 0.1,
) -> EstimateReport:
    """
    Compute PERR_Prev, PERR_Comp and RR of an observed cohort.

    Parameters
    ----------
    cohort : str or Cohort
        Path to a cohort CSV file or a Cohort.
    bootstrap : int
        Number of bootstrap resamples; no bootstrap intervals if not given.
    level : float
        Confidence level of all intervals.
    seed : int
        Seed of the bootstrap random stream.
    max_failure_fraction : float
        Highest tolerated fraction of failed bootstrap resamples.

    Returns
    -------
    EstimateReport

    Raises
    ------
    TooManyFailures if a bootstrap interval cannot be computed.
    """
    if not isinstance(cohort, Cohort):
        cohort = read_cohort(cohort)
    summary = summarize_cohort(cohort)
    report = EstimateReport(
        n_persons=len(cohort),
        summary=summary,
        estimates=estimate_all(summary),
        wald={name: wald_ci(summary, name, level=level) for name in ESTIMATORS},
    )
    if bootstrap:
        intervals = {}
        for index, name in enumerate(ESTIMATORS):
            # every estimator resamples from its own stream
            rng = np.random.Generator(
                np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,)))
            )
            intervals[name] = bootstrap_ci(
                cohort,
                estimator=name,
                n_resamples=bootstrap,
                level=level,
                rng=rng,
                max_failure_fraction=max_failure_fraction,
            )
            logger.debug(f"{name} bootstrap interval: {intervals[name]}")
        report = report._replace(bootstrap=intervals)
    return report
