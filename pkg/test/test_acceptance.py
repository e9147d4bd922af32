"""Monte Carlo experiments checking the bias pattern of both PERR variants."""

import os

import numpy as np
import pytest

from perr_lab import ExperimentGrid, commands, run_experiment
from perr_lab.harness import calibrate_cell, run_replicate
from perr_lab.io import read_results, read_text

pytestmark = pytest.mark.slow

TRUE_EFFECT = 2.0
DESK_COHORT_SIZE = 20_000
DESK_REPLICATES = 500


def _by_cell(rows):
    return {(r.scenario_id, r.dropout_target, r.estimator): r for r in rows}


def _mc_error(row):
    # standard error of the mean, approximated from the 95% band of the replicates
    return (row.p97_5 - row.p2_5) / (2 * 1.96) / np.sqrt(row.n_used)


@pytest.fixture(scope="module")
def scenario_1_rows():
    grid = ExperimentGrid(
        master_seed=20240101, scenarios=(1,), cohort_size=100_000, n_replicates=400
    )
    return _by_cell(run_experiment(grid, workers=os.cpu_count() or 1))


def test_no_dropout():
    grid = ExperimentGrid(
        master_seed=11,
        dropout_targets=(0.0,),
        cohort_size=DESK_COHORT_SIZE,
        n_replicates=DESK_REPLICATES,
    )
    rows = _by_cell(run_experiment(grid, workers=os.cpu_count() or 1))
    for scenario_id in grid.scenarios:
        prev = rows[(scenario_id, 0.0, "perr_prev")]
        comp = rows[(scenario_id, 0.0, "perr_comp")]
        rr = rows[(scenario_id, 0.0, "rr")]
        assert abs(prev.mean - TRUE_EFFECT) <= 0.02
        assert prev.mean == comp.mean
        # positive confounding inflates the crude relative risk
        assert rr.mean - TRUE_EFFECT > 5 * _mc_error(rr)
    cell = calibrate_cell(grid, 1, 0)
    for replicate_index in range(20):
        estimates = run_replicate(grid, cell, replicate_index).estimates
        assert estimates.perr_prev == estimates.perr_comp


def test_perr_comp_unbiased_without_prior_event_dropout():
    grid = ExperimentGrid(
        master_seed=12,
        scenarios=(3, 4),
        cohort_size=DESK_COHORT_SIZE,
        n_replicates=DESK_REPLICATES,
    )
    for row in run_experiment(grid, workers=os.cpu_count() or 1):
        if row.estimator == "perr_comp":
            assert abs(row.mean - TRUE_EFFECT) <= 0.03
            assert row.oracle == pytest.approx(TRUE_EFFECT, abs=1e-12)


def test_bias_direction_at_high_dropout(scenario_1_rows):
    prev = scenario_1_rows[(1, 0.2, "perr_prev")]
    comp = scenario_1_rows[(1, 0.2, "perr_comp")]
    assert TRUE_EFFECT - prev.mean > 3 * _mc_error(prev)
    assert comp.mean - TRUE_EFFECT > 3 * _mc_error(comp)
    assert abs(comp.mean - TRUE_EFFECT) < abs(prev.mean - TRUE_EFFECT)


def test_perr_prev_bias_grows_with_dropout(scenario_1_rows):
    biases = [
        abs(scenario_1_rows[(1, target, "perr_prev")].mean - TRUE_EFFECT)
        for target in (0.0, 0.05, 0.10, 0.15, 0.20)
    ]
    assert biases == sorted(biases)


def test_perr_comp_practically_unbiased_at_low_dropout(scenario_1_rows):
    for target in (0.0, 0.05, 0.10):
        assert abs(scenario_1_rows[(1, target, "perr_comp")].mean - TRUE_EFFECT) <= 0.02


def test_results_independent_of_worker_count(perr_tmpdir):
    config = dict(
        seed=31337,
        scenarios=[1, 2],
        dropout_rates=[0.0, 0.1],
        cohort_size=5000,
        replicates=40,
    )
    outputs = []
    for workers in (1, 4, 8):
        out_dir = os.path.join(perr_tmpdir, f"workers_{workers}")
        commands.simulate(config, out_dir=out_dir, workers=workers)
        outputs.append(read_text(os.path.join(out_dir, commands.RESULTS_FILE)))
    assert outputs[0] == outputs[1] == outputs[2]


@pytest.mark.full_scale
def test_full_scale(perr_tmpdir):
    out_dir = os.path.join(perr_tmpdir, "full_scale")
    commands.simulate({"seed": 20240101}, out_dir=out_dir, figure=True)
    rows = read_results(os.path.join(out_dir, commands.RESULTS_FILE))
    assert len(rows) == 60
    assert all(row.n_failed == 0 for row in rows)
    assert all(row.n_used == 10_000 for row in rows)
