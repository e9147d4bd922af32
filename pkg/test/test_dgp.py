import numpy as np
import pytest

from perr_lab import (
    DgpParams,
    ScenarioSpec,
    calibrate_dropout_intercept,
    enumerate_population,
    estimate,
    sample_cohort,
    summarize_cohort,
)
from perr_lab.dgp import (
    NO_DROPOUT,
    SCENARIO_DETERMINANTS,
    Determinant,
    conditional_laws,
    marginal_dropout,
)
from perr_lab.errors import InvalidParams, NoSolution

DROPOUT_TARGETS = (0.0, 0.05, 0.10, 0.15, 0.20)


def _calibrated(params, scenario_id, target):
    spec = ScenarioSpec(scenario_id, target)
    return spec, calibrate_dropout_intercept(params, spec)


def test_default_params(default_params):
    assert default_params.rr_x == 2.0
    assert default_params.to_dict()["gamma_y1"] == 0.04
    # all risk model probabilities stay well below 1
    laws = conditional_laws(default_params, ScenarioSpec(1), NO_DROPOUT)
    assert laws.p_y2.max() < 0.5
    assert laws.p_y1.max() < 0.5


def test_invalid_params():
    for kwargs, field in [
        (dict(p_c=1.5), "p_c"),
        (dict(p1=-0.1), "p1"),
        (dict(r_c=0), "r_c"),
        (dict(rr_x=-2), "rr_x"),
        (dict(alpha0=float("nan")), "alpha0"),
        (dict(gamma_x=True), "gamma_x"),
        (dict(p1=0.4, r_c=3), "p1"),
        (dict(p2=0.3, r_c=2, rr_x=2), "p2"),
    ]:
        with pytest.raises(InvalidParams) as exc:
            DgpParams(**kwargs)
        assert exc.value.field == field
    with pytest.raises(InvalidParams) as exc:
        DgpParams(p2=0.3, r_c=2, rr_x=2)
    assert "1.2 exceeds 1" in str(exc.value)


def test_protective_factors_are_bounded_by_baseline():
    # r_c < 1 lowers the risk, so only the baseline has to stay below 1
    params = DgpParams(p1=0.9, p2=0.9, r_c=0.5, rr_x=0.5)
    laws = conditional_laws(params, ScenarioSpec(4), NO_DROPOUT)
    assert laws.p_y2.max() == pytest.approx(0.9)


def test_scenario_spec():
    assert ScenarioSpec(2).active_determinants == frozenset(
        {Determinant.CONFOUNDER, Determinant.PRIOR_EVENT}
    )
    assert set(SCENARIO_DETERMINANTS) == {1, 2, 3, 4}
    params = DgpParams(gamma_c=1.0, gamma_x=2.0, gamma_y1=3.0)
    assert ScenarioSpec(1).dropout_coefficients(params) == (1.0, 2.0, 3.0)
    assert ScenarioSpec(2).dropout_coefficients(params) == (1.0, 0.0, 3.0)
    assert ScenarioSpec(3).dropout_coefficients(params) == (1.0, 2.0, 0.0)
    assert ScenarioSpec(4).dropout_coefficients(params) == (1.0, 0.0, 0.0)
    for kwargs in [
        dict(scenario_id=5),
        dict(scenario_id=True),
        dict(scenario_id=1, target_dropout=0.6),
        dict(scenario_id=1, target_dropout=-0.1),
    ]:
        with pytest.raises(InvalidParams):
            ScenarioSpec(**kwargs)


def test_calibrate_dropout_intercept(default_params):
    for scenario_id in (1, 2, 3, 4):
        for target in DROPOUT_TARGETS[1:] + (0.5,):
            spec, gamma0 = _calibrated(default_params, scenario_id, target)
            assert abs(marginal_dropout(default_params, spec, gamma0) - target) < 1e-10


def test_calibrate_no_dropout(default_params):
    spec, gamma0 = _calibrated(default_params, 1, 0.0)
    assert gamma0 == NO_DROPOUT
    assert marginal_dropout(default_params, spec, gamma0) == 0.0


def test_calibrate_without_active_coefficients():
    params = DgpParams(gamma_c=0.0)
    spec, gamma0 = _calibrated(params, 4, 0.1)
    assert gamma0 == pytest.approx(np.log(0.1 / 0.9))
    assert marginal_dropout(params, spec, gamma0) == pytest.approx(0.1)


def test_calibrate_no_solution():
    # persons with C = 1 never drop out, persons with C = 0 are only 10 %
    params = DgpParams(p_c=0.9, gamma_c=-100.0)
    with pytest.raises(NoSolution):
        calibrate_dropout_intercept(params, ScenarioSpec(4, 0.2))


def test_enumerate_population_joint(default_params):
    for scenario_id in (1, 2, 3, 4):
        for target in DROPOUT_TARGETS:
            spec, gamma0 = _calibrated(default_params, scenario_id, target)
            population = enumerate_population(default_params, spec, gamma0)
            assert population.joint.shape == (2, 2, 2, 2, 2)
            assert abs(population.joint.sum() - 1) < 1e-12
            assert abs(population.marginal_dropout - target) < 1e-10


def test_enumerate_population_no_dropout(default_params):
    for scenario_id in (1, 2, 3, 4):
        spec, gamma0 = _calibrated(default_params, scenario_id, 0.0)
        population = enumerate_population(default_params, spec, gamma0)
        assert population.perr_prev == pytest.approx(population.perr_comp, abs=1e-12)
        assert population.perr_comp == pytest.approx(2.0, abs=1e-12)
        # positive confounding inflates the crude relative risk
        assert population.rr > 3.0


def test_enumerate_population_unbiased_scenarios(default_params):
    for scenario_id in (3, 4):
        for target in DROPOUT_TARGETS:
            spec, gamma0 = _calibrated(default_params, scenario_id, target)
            population = enumerate_population(default_params, spec, gamma0)
            assert abs(population.perr_comp - 2.0) < 1e-12


def test_enumerate_population_scenario_1(default_params):
    spec, gamma0 = _calibrated(default_params, 1, 0.2)
    population = enumerate_population(default_params, spec, gamma0)
    assert population.perr_prev < 2.0 < population.perr_comp
    assert abs(population.perr_comp - 2) < abs(population.perr_prev - 2)
    spec, gamma0 = _calibrated(default_params, 1, 0.1)
    population = enumerate_population(default_params, spec, gamma0)
    assert abs(population.perr_comp - 2) < 0.02
    biases = []
    for target in DROPOUT_TARGETS:
        spec, gamma0 = _calibrated(default_params, 1, target)
        population = enumerate_population(default_params, spec, gamma0)
        biases.append(abs(population.perr_prev - 2))
    assert biases == sorted(biases)


def test_sample_cohort_determinism(default_params):
    spec, gamma0 = _calibrated(default_params, 1, 0.2)
    first = sample_cohort(default_params, spec, gamma0, 1000, np.random.default_rng(9))
    second = sample_cohort(default_params, spec, gamma0, 1000, np.random.default_rng(9))
    assert list(first) == list(second)
    assert first.y2.mask.tolist() == (first.m2 == 1).tolist()


def test_sample_cohort_no_dropout(default_params):
    spec, gamma0 = _calibrated(default_params, 2, 0.0)
    cohort = sample_cohort(
        default_params, spec, gamma0, 1000, np.random.default_rng(10)
    )
    assert cohort.m2.sum() == 0
    estimates = estimate(summarize_cohort(cohort))
    assert estimates.perr_prev == estimates.perr_comp


def test_sample_cohort_invalid(default_params):
    spec = ScenarioSpec(1)
    with pytest.raises(InvalidParams):
        sample_cohort(default_params, spec, NO_DROPOUT, 0, np.random.default_rng())
    with pytest.raises(InvalidParams):
        sample_cohort(default_params, spec, float("nan"), 10, np.random.default_rng())


def test_sample_cohort_frequencies(default_params):
    n = 1_000_000
    spec, gamma0 = _calibrated(default_params, 1, 0.2)
    cohort = sample_cohort(default_params, spec, gamma0, n, np.random.default_rng(11))
    population = enumerate_population(default_params, spec, gamma0)
    for observed, expected in [
        (cohort.c.mean(), default_params.p_c),
        (cohort.m2.mean(), 0.2),
        (cohort.x.mean(), population.joint[:, 1].sum()),
        (cohort.y1.mean(), population.joint[:, :, 1].sum()),
    ]:
        assert abs(observed - expected) < 4 * np.sqrt(expected * (1 - expected) / n)


@pytest.mark.parametrize(
    "params",
    [DgpParams(), DgpParams(gamma_c=-1.5, gamma_x=-2.0, gamma_y1=1.0)],
)
def test_marginal_dropout_increases_with_intercept(params):
    gammas = np.linspace(-20.0, 10.0, 601)
    for scenario_id in (1, 2, 3, 4):
        spec = ScenarioSpec(scenario_id, 0.1)
        dropout = np.array([marginal_dropout(params, spec, g) for g in gammas])
        assert np.all(np.diff(dropout) > 0)
        assert 0 < dropout[0] < dropout[-1] < 1


@pytest.mark.slow
@pytest.mark.parametrize("scenario_id", [1, 2, 3, 4])
def test_sample_cohort_conditional_means(default_params, scenario_id):
    n = 1_000_000
    for index, target in enumerate(DROPOUT_TARGETS):
        spec, gamma0 = _calibrated(default_params, scenario_id, target)
        cohort = sample_cohort(
            default_params, spec, gamma0, n, np.random.default_rng([scenario_id, index])
        )
        summary = summarize_cohort(cohort)
        population = enumerate_population(default_params, spec, gamma0)
        for counts, expected in [
            (summary.treated, population.treated),
            (summary.control, population.control),
        ]:
            # E(Y1 | X), E(Y1 | X, M2 = 0) and E(Y2 | X, M2 = 0)
            persons = (counts.n_total, counts.n_completers, counts.n_completers)
            for observed, mean, count in zip(counts.means(), expected, persons):
                assert abs(observed - mean) < 4 * np.sqrt(mean * (1 - mean) / count)
