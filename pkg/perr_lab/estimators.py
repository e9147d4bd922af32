"""
Treatment effect estimators for two-period binary outcome cohorts.

Three estimators are computed from group-wise conditional means:

* ``rr``: post-period relative risk among completers,
* ``perr_prev``: ``rr`` divided by the prior-period relative risk of all persons,
* ``perr_comp``: ``rr`` divided by the prior-period relative risk of completers.

Estimators never raise on degenerate data. Instead they return a ``Failure``
marker: ``Failure.EMPTY`` if a required subgroup has no members and
``Failure.UNDEFINED`` if a ratio involves a zero proportion.
"""

from dataclasses import dataclass
from enum import Enum
import logging
from typing import Callable, NamedTuple, Optional, Union

import numpy as np
from scipy.stats import norm

from perr_lab.cohort import Cohort
from perr_lab.errors import InvalidParams, TooManyFailures

logger = logging.getLogger(__name__)


class Failure(Enum):
    """In-band marker for an estimate which cannot be computed."""

    UNDEFINED = "undefined"
    EMPTY = "empty"

    def __str__(self):
        return self.value


EstimateValue = Union[float, Failure]

ESTIMATORS = ("perr_prev", "perr_comp", "rr")


def is_failure(value):
    return isinstance(value, Failure)


class GroupMeans(NamedTuple):
    """Conditional expectations of one treatment group."""

    prior_all: EstimateValue
    prior_completers: EstimateValue
    post_completers: EstimateValue


@dataclass(frozen=True)
class GroupCounts:
    """Sufficient statistics of one treatment group."""

    n_total: int = 0
    n_completers: int = 0
    sum_y1_all: int = 0
    sum_y1_completers: int = 0
    sum_y2_completers: int = 0

    def __post_init__(self):
        for name, value in vars(self).items():
            if value < 0:
                raise InvalidParams(name, f"must not be negative, not {value}")
        if self.n_completers > self.n_total:
            raise InvalidParams("n_completers", "must not exceed n_total")
        if self.sum_y1_completers > self.n_completers:
            raise InvalidParams("sum_y1_completers", "must not exceed n_completers")
        if self.sum_y1_all < self.sum_y1_completers:
            raise InvalidParams("sum_y1_all", "must not be below sum_y1_completers")
        if self.sum_y1_all - self.sum_y1_completers > (
            self.n_total - self.n_completers
        ):
            raise InvalidParams("sum_y1_all", "exceeds the number of persons")
        if self.sum_y2_completers > self.n_completers:
            raise InvalidParams("sum_y2_completers", "must not exceed n_completers")

    def means(self):
        return GroupMeans(
            prior_all=_proportion(self.sum_y1_all, self.n_total),
            prior_completers=_proportion(self.sum_y1_completers, self.n_completers),
            post_completers=_proportion(self.sum_y2_completers, self.n_completers),
        )


@dataclass(frozen=True)
class CohortSummary:
    """Group counts for the treated (x = 1) and control (x = 0) group."""

    treated: GroupCounts = GroupCounts()
    control: GroupCounts = GroupCounts()

    def swapped(self):
        """Return summary with treated and control labels exchanged."""
        return CohortSummary(treated=self.control, control=self.treated)


class EstimateSet(NamedTuple):
    perr_prev: EstimateValue
    perr_comp: EstimateValue
    rr: EstimateValue


class WaldInterval(NamedTuple):
    estimate: float
    lower: float
    upper: float
    se_log: float


class BootstrapInterval(NamedTuple):
    lower: float
    upper: float
    n_failed: int
    n_resamples: int


def _proportion(events, persons):
    return Failure.EMPTY if persons == 0 else events / persons


def _relative(treated, control):
    for value in (treated, control):
        if value is Failure.EMPTY:
            return Failure.EMPTY
    for value in (treated, control):
        if value is Failure.UNDEFINED:
            return Failure.UNDEFINED
    # a zero on either side is the denominator after swapping group labels
    if treated == 0 or control == 0:
        return Failure.UNDEFINED
    return treated / control


def estimates_from_means(treated: GroupMeans, control: GroupMeans) -> EstimateSet:
    """
    Compute all three estimators from the group-wise conditional means.

    Used both on observed proportions and on exact population expectations.
    """
    rr = _relative(treated.post_completers, control.post_completers)
    return EstimateSet(
        perr_prev=_relative(rr, _relative(treated.prior_all, control.prior_all)),
        perr_comp=_relative(
            rr, _relative(treated.prior_completers, control.prior_completers)
        ),
        rr=rr,
    )


def _summary_from_cells(cells):
    # cells: counts indexed by x * 8 + m2 * 4 + y1 * 2 + y2
    cells = np.asarray(cells, dtype=np.int64).reshape(2, 2, 2, 2)
    groups = {}
    for x in (0, 1):
        group = cells[x]
        groups[x] = GroupCounts(
            n_total=int(group.sum()),
            n_completers=int(group[0].sum()),
            sum_y1_all=int(group[:, 1].sum()),
            sum_y1_completers=int(group[0, 1].sum()),
            sum_y2_completers=int(group[0, :, 1].sum()),
        )
    return CohortSummary(treated=groups[1], control=groups[0])


def _cell_codes(cohort):
    return (
        cohort.x.astype(np.int64) * 8
        + cohort.m2 * 4
        + cohort.y1 * 2
        + cohort.y2.filled(0)
    )


def _as_cohort(records):
    return records if isinstance(records, Cohort) else Cohort.from_records(records)


def summarize_cohort(records) -> CohortSummary:
    """
    Count the sufficient statistics of a cohort.

    Parameters
    ----------
    records : Cohort or iterable of IndividualRecord

    Returns
    -------
    CohortSummary

    Raises
    ------
    MalformedRecord if a record breaks the observability rule.
    """
    cohort = _as_cohort(records)
    return _summary_from_cells(np.bincount(_cell_codes(cohort), minlength=16))


def perr_prev(summary: CohortSummary) -> EstimateValue:
    """Post-period completer relative risk over the prior-period all-person one."""
    return estimates_from_means(summary.treated.means(), summary.control.means())[0]


def perr_comp(summary: CohortSummary) -> EstimateValue:
    """Post-period over prior-period relative risk, both among completers."""
    return estimates_from_means(summary.treated.means(), summary.control.means())[1]


def relative_risk(summary: CohortSummary) -> EstimateValue:
    """Post-period relative risk among completers."""
    return estimates_from_means(summary.treated.means(), summary.control.means())[2]


def estimate(summary: CohortSummary) -> EstimateSet:
    """Return all three estimators."""
    return estimates_from_means(summary.treated.means(), summary.control.means())


_ESTIMATOR_FUNCS = {
    "perr_prev": perr_prev,
    "perr_comp": perr_comp,
    "rr": relative_risk,
}


def get_estimator(estimator):
    """Return estimator function from its name or the function itself."""
    if callable(estimator):
        if estimator not in _ESTIMATOR_FUNCS.values():
            raise InvalidParams("estimator", f"unknown estimator {estimator!r}")
        return estimator
    try:
        return _ESTIMATOR_FUNCS[estimator]
    except KeyError:
        raise InvalidParams(
            "estimator", f"must be one of {ESTIMATORS}, not {estimator!r}"
        )


def _validate_level(level):
    if isinstance(level, bool) or not 0.5 < level < 1:
        raise InvalidParams("level", f"must be within (0.5, 1), not {level}")
    return float(level)


def wald_ci(summary: CohortSummary, estimator="rr", level=0.95):
    """
    Delta method confidence interval on the log scale.

    The variance of each log proportion is ``1 / events - 1 / persons``; the four
    proportions entering an estimator are treated as independent, which is
    conservative when prior and post events are positively correlated.

    Returns
    -------
    WaldInterval or Failure marker if the estimate cannot be computed.
    """
    func = get_estimator(estimator)
    level = _validate_level(level)
    value = func(summary)
    if is_failure(value):
        return value
    terms = [
        (summary.treated.sum_y2_completers, summary.treated.n_completers),
        (summary.control.sum_y2_completers, summary.control.n_completers),
    ]
    if func is perr_prev:
        terms += [
            (summary.treated.sum_y1_all, summary.treated.n_total),
            (summary.control.sum_y1_all, summary.control.n_total),
        ]
    elif func is perr_comp:
        terms += [
            (summary.treated.sum_y1_completers, summary.treated.n_completers),
            (summary.control.sum_y1_completers, summary.control.n_completers),
        ]
    se_log = float(np.sqrt(sum(1 / events - 1 / persons for events, persons in terms)))
    z = norm.ppf(0.5 + level / 2)
    return WaldInterval(
        estimate=value,
        lower=float(np.exp(np.log(value) - z * se_log)),
        upper=float(np.exp(np.log(value) + z * se_log)),
        se_log=se_log,
    )


def percentiles(values, q):
    """
    Percentiles by linear interpolation between order statistics.

    The k-th smallest of n values sits at plotting position (k - 1) / (n - 1).
    """
    return np.percentile(np.asarray(values, dtype=np.float64), q)


def bootstrap_ci(
    records,
    estimator: Union[str, Callable] = "perr_comp",
    n_resamples: int = 1000,
    level: float = 0.95,
    rng: Optional[np.random.Generator] = None,
    max_failure_fraction: float = 0.1,
) -> BootstrapInterval:
    """
    Percentile bootstrap interval from resampling whole records with replacement.

    Parameters
    ----------
    records : Cohort or iterable of IndividualRecord
    estimator : str or callable
        One of "perr_prev", "perr_comp", "rr" or the corresponding function.
    n_resamples : int
        Number of bootstrap resamples, at least 100.
    level : float
        Coverage level within (0.5, 1).
    rng : numpy.random.Generator
        Random stream (default: freshly seeded generator).
    max_failure_fraction : float
        Highest tolerated fraction of resamples without an estimate.

    Returns
    -------
    BootstrapInterval(lower, upper, n_failed, n_resamples)

    Raises
    ------
    TooManyFailures if more than max_failure_fraction of the resamples (or all of
    them) yield a failure marker.
    """
    func = get_estimator(estimator)
    level = _validate_level(level)
    if isinstance(n_resamples, bool) or n_resamples < 100:
        raise InvalidParams("n_resamples", f"must be at least 100, not {n_resamples}")
    rng = rng or np.random.default_rng()
    cohort = _as_cohort(records)
    codes = _cell_codes(cohort)
    n = len(codes)
    values = []
    n_failed = 0
    for _ in range(n_resamples):
        resample = codes[rng.integers(0, n, size=n)] if n else codes
        value = func(_summary_from_cells(np.bincount(resample, minlength=16)))
        if is_failure(value):
            n_failed += 1
        else:
            values.append(value)
    logger.debug(f"bootstrap: {n_failed} of {n_resamples} resamples failed")
    if not values or n_failed > max_failure_fraction * n_resamples:
        raise TooManyFailures(
            f"{n_failed} of {n_resamples} bootstrap resamples yielded no estimate"
        )
    lower, upper = percentiles(values, [50 * (1 - level), 50 * (1 + level)])
    return BootstrapInterval(
        lower=float(lower),
        upper=float(upper),
        n_failed=n_failed,
        n_resamples=n_resamples,
    )
