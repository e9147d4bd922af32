"""
Structural data-generating process for two-period cohorts with selective dropout.

Persons are generated in the order C -> X -> Y1 -> M2 -> Y2:

* C ~ Bernoulli(p_c), a binary time-constant confounder,
* X | C ~ Bernoulli(expit(alpha0 + alpha1 * C)), ever treated,
* Y1 | C ~ Bernoulli(p1 * r_c ** C), prior-period event,
* M2 | C, X, Y1 ~ Bernoulli(expit(gamma0 + active dropout terms)), non-completer,
* Y2 | C, X ~ Bernoulli(p2 * r_c ** C * rr_x ** X), observed only if M2 = 0.

Because all factors are binary, the joint law has 32 states and every population
quantity can be computed exactly, which serves as the oracle for the Monte Carlo
harness.
"""

from dataclasses import asdict, dataclass
from enum import Enum
import itertools
import logging
from typing import NamedTuple

import numpy as np
import numpy.ma as ma
from scipy.optimize import bisect
from scipy.special import expit, logit

from perr_lab.cohort import Cohort
from perr_lab.errors import InvalidParams, NoSolution
from perr_lab.estimators import (
    EstimateValue,
    Failure,
    GroupMeans,
    estimates_from_means,
)
from perr_lab.validate import (
    validate_dropout_target,
    validate_positive,
    validate_positive_integer,
    validate_probability,
    validate_real,
    validate_scenario_id,
)

logger = logging.getLogger(__name__)

# intercept sentinel: expit(-inf) == 0, i.e. nobody drops out
NO_DROPOUT = float("-inf")
INTERCEPT_BOUNDS = (-40.0, 40.0)
INTERCEPT_XTOL = 1e-12


class Determinant(Enum):
    """Variables which may drive post-period dropout."""

    CONFOUNDER = "C"
    TREATMENT = "X"
    PRIOR_EVENT = "Y1"


SCENARIO_DETERMINANTS = {
    1: frozenset(
        {Determinant.CONFOUNDER, Determinant.TREATMENT, Determinant.PRIOR_EVENT}
    ),
    2: frozenset({Determinant.CONFOUNDER, Determinant.PRIOR_EVENT}),
    3: frozenset({Determinant.CONFOUNDER, Determinant.TREATMENT}),
    4: frozenset({Determinant.CONFOUNDER}),
}


@dataclass(frozen=True)
class DgpParams:
    """
    Structural coefficients and baseline risks of the generator.

    Attributes
    ----------
    p_c : float
        Prevalence of the confounder C.
    alpha0, alpha1 : float
        Intercept and C coefficient of the logistic treatment model.
    p1 : float
        Prior-event risk P(Y1 = 1 | C = 0).
    p2 : float
        Post-event risk P(Y2 = 1 | C = 0, X = 0).
    r_c : float
        Risk ratio of C on both Y1 and Y2.
    rr_x : float
        True treatment effect, risk ratio of X on Y2.
    gamma_c, gamma_x, gamma_y1 : float
        Dropout log-odds coefficients of C, X and Y1.
    """

    p_c: float = 0.5
    alpha0: float = -1.0
    alpha1: float = 2.0
    p1: float = 0.10
    p2: float = 0.08
    r_c: float = 3.0
    rr_x: float = 2.0
    gamma_c: float = 2.0
    gamma_x: float = 2.0
    gamma_y1: float = 0.04

    def __post_init__(self):
        validators = dict(
            p_c=validate_probability,
            alpha0=validate_real,
            alpha1=validate_real,
            p1=validate_probability,
            p2=validate_probability,
            r_c=validate_positive,
            rr_x=validate_positive,
            gamma_c=validate_real,
            gamma_x=validate_real,
            gamma_y1=validate_real,
        )
        for name, validator in validators.items():
            object.__setattr__(self, name, validator(name, getattr(self, name)))
        max_prior = self.p1 * max(1.0, self.r_c)
        if max_prior > 1:
            raise InvalidParams("p1", f"p1 * r_c = {max_prior:g} exceeds 1")
        max_post = self.p2 * max(1.0, self.r_c) * max(1.0, self.rr_x)
        if max_post > 1:
            raise InvalidParams("p2", f"p2 * r_c * rr_x = {max_post:g} exceeds 1")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ScenarioSpec:
    """Dropout scenario and its target marginal dropout rate."""

    scenario_id: int
    target_dropout: float = 0.0

    def __post_init__(self):
        object.__setattr__(
            self, "scenario_id", validate_scenario_id("scenario_id", self.scenario_id)
        )
        object.__setattr__(
            self,
            "target_dropout",
            validate_dropout_target("target_dropout", self.target_dropout),
        )

    @property
    def active_determinants(self):
        return SCENARIO_DETERMINANTS[self.scenario_id]

    def dropout_coefficients(self, params: DgpParams):
        """Return (gamma_c, gamma_x, gamma_y1) with inactive coefficients set to 0."""
        active = self.active_determinants
        return (
            params.gamma_c if Determinant.CONFOUNDER in active else 0.0,
            params.gamma_x if Determinant.TREATMENT in active else 0.0,
            params.gamma_y1 if Determinant.PRIOR_EVENT in active else 0.0,
        )


class ConditionalLaws(NamedTuple):
    """Conditional success probabilities of every factor of the joint law."""

    p_c: float
    p_x: np.ndarray  # [c]
    p_y1: np.ndarray  # [c]
    p_m2: np.ndarray  # [c, x, y1]
    p_y2: np.ndarray  # [c, x]


@dataclass(frozen=True)
class PopulationEstimands:
    """Exact joint law and the asymptotic values of all estimands."""

    joint: np.ndarray  # [c, x, y1, m2, y2]
    gamma0: float
    marginal_dropout: float
    treated: GroupMeans
    control: GroupMeans
    perr_prev: EstimateValue
    perr_comp: EstimateValue
    rr: EstimateValue


def _validate_gamma0(gamma0):
    if gamma0 == NO_DROPOUT:
        return NO_DROPOUT
    return validate_real("gamma0", gamma0)


def conditional_laws(params: DgpParams, spec: ScenarioSpec, gamma0) -> ConditionalLaws:
    """Tabulate P(X=1|c), P(Y1=1|c), P(M2=1|c,x,y1) and P(Y2=1|c,x)."""
    gamma0 = _validate_gamma0(gamma0)
    gamma_c, gamma_x, gamma_y1 = spec.dropout_coefficients(params)
    c = np.arange(2).reshape(2, 1, 1)
    x = np.arange(2).reshape(1, 2, 1)
    y1 = np.arange(2).reshape(1, 1, 2)
    return ConditionalLaws(
        p_c=params.p_c,
        p_x=expit(params.alpha0 + params.alpha1 * np.arange(2)),
        p_y1=params.p1 * params.r_c ** np.arange(2),
        p_m2=expit(gamma0 + gamma_c * c + gamma_x * x + gamma_y1 * y1),
        p_y2=params.p2
        * params.r_c ** np.arange(2).reshape(2, 1)
        * params.rr_x ** np.arange(2).reshape(1, 2),
    )


def _pre_dropout_law(laws: ConditionalLaws):
    # P(c, x, y1) as [c, x, y1]
    p_c = np.array([1 - laws.p_c, laws.p_c]).reshape(2, 1, 1)
    p_x = np.stack([1 - laws.p_x, laws.p_x], axis=1).reshape(2, 2, 1)
    p_y1 = np.stack([1 - laws.p_y1, laws.p_y1], axis=1).reshape(2, 1, 2)
    return p_c * p_x * p_y1


def marginal_dropout(params: DgpParams, spec: ScenarioSpec, gamma0) -> float:
    """Exact P(M2 = 1) from the 8-state pre-dropout law."""
    laws = conditional_laws(params, spec, gamma0)
    return float((_pre_dropout_law(laws) * laws.p_m2).sum())


def calibrate_dropout_intercept(params: DgpParams, spec: ScenarioSpec) -> float:
    """
    Solve for the dropout intercept reproducing the target marginal dropout rate.

    The marginal rate is strictly increasing in the intercept, so the root is found
    by bisection on [-40, 40] down to an interval width of 1e-12.

    Parameters
    ----------
    params : DgpParams
    spec : ScenarioSpec

    Returns
    -------
    gamma0 : float
        ``NO_DROPOUT`` if the target is 0.

    Raises
    ------
    NoSolution if the target cannot be reached within the search interval.
    """
    if not isinstance(params, DgpParams):
        raise InvalidParams("params", "must be DgpParams")
    target = spec.target_dropout
    if target == 0:
        logger.debug(f"scenario {spec.scenario_id}: no-dropout mode")
        return NO_DROPOUT
    if not any(spec.dropout_coefficients(params)):
        return float(logit(target))

    def _excess(gamma0):
        return marginal_dropout(params, spec, gamma0) - target

    low, high = INTERCEPT_BOUNDS
    if _excess(low) > 0 or _excess(high) < 0:
        raise NoSolution(
            f"dropout target {target} not attainable for intercepts in "
            f"{INTERCEPT_BOUNDS} in scenario {spec.scenario_id}"
        )
    gamma0 = bisect(_excess, low, high, xtol=INTERCEPT_XTOL, maxiter=200)
    logger.debug(
        f"scenario {spec.scenario_id}, target {target}: calibrated gamma0={gamma0}"
    )
    return float(gamma0)


def sample_cohort(
    params: DgpParams,
    spec: ScenarioSpec,
    gamma0: float,
    n: int,
    rng: np.random.Generator,
) -> Cohort:
    """
    Draw n independent persons.

    Each variable is drawn from its own block of n uniforms, in generation order.
    The post-period outcome is drawn for everyone and masked for non-completers.

    Parameters
    ----------
    params : DgpParams
    spec : ScenarioSpec
    gamma0 : float
        Intercept from ``calibrate_dropout_intercept``.
    n : int
        Cohort size.
    rng : numpy.random.Generator

    Returns
    -------
    Cohort
    """
    n = validate_positive_integer("n", n)
    laws = conditional_laws(params, spec, gamma0)
    c = (rng.random(n) < laws.p_c).astype(np.int8)
    x = (rng.random(n) < laws.p_x[c]).astype(np.int8)
    y1 = (rng.random(n) < laws.p_y1[c]).astype(np.int8)
    m2 = (rng.random(n) < laws.p_m2[c, x, y1]).astype(np.int8)
    y2 = (rng.random(n) < laws.p_y2[c, x]).astype(np.int8)
    dropout = m2 == 1
    y2[dropout] = 0
    return Cohort(c, x, y1, m2, ma.masked_array(y2, mask=dropout), validate=False)


def _population_mean(events, mass):
    return Failure.EMPTY if mass == 0 else float(events / mass)


def enumerate_population(
    params: DgpParams, spec: ScenarioSpec, gamma0: float
) -> PopulationEstimands:
    """
    Exact joint law over the 32 binary states and the implied asymptotic estimands.

    Returns
    -------
    PopulationEstimands
    """
    laws = conditional_laws(params, spec, gamma0)
    joint = np.zeros((2, 2, 2, 2, 2))
    for c, x, y1, m2, y2 in itertools.product((0, 1), repeat=5):
        joint[c, x, y1, m2, y2] = (
            (laws.p_c if c else 1 - laws.p_c)
            * (laws.p_x[c] if x else 1 - laws.p_x[c])
            * (laws.p_y1[c] if y1 else 1 - laws.p_y1[c])
            * (laws.p_m2[c, x, y1] if m2 else 1 - laws.p_m2[c, x, y1])
            * (laws.p_y2[c, x] if y2 else 1 - laws.p_y2[c, x])
        )
    group_means = {}
    for g in (0, 1):
        group = joint[:, g]
        completers = group[:, :, 0]
        group_means[g] = GroupMeans(
            prior_all=_population_mean(group[:, 1].sum(), group.sum()),
            prior_completers=_population_mean(
                completers[:, 1].sum(), completers.sum()
            ),
            post_completers=_population_mean(
                completers[:, :, 1].sum(), completers.sum()
            ),
        )
    estimates = estimates_from_means(group_means[1], group_means[0])
    return PopulationEstimands(
        joint=joint,
        gamma0=gamma0,
        marginal_dropout=float(joint[:, :, :, 1].sum()),
        treated=group_means[1],
        control=group_means[0],
        perr_prev=estimates.perr_prev,
        perr_comp=estimates.perr_comp,
        rr=estimates.rr,
    )
