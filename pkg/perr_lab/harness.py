"""
Monte Carlo experiment over scenarios and dropout levels.

Every replicate owns a random stream derived from ``(master_seed, scenario_id,
dropout_index, replicate_index)``, so replicates can be executed in any order and on
any number of workers. Aggregation is a single-threaded fold over results sorted by
replicate index, which makes the output independent of scheduling.
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Iterator, List, NamedTuple, Optional, Tuple
import warnings

import numpy as np

from perr_lab._executor import Executor
from perr_lab.dgp import (
    DgpParams,
    PopulationEstimands,
    ScenarioSpec,
    calibrate_dropout_intercept,
    enumerate_population,
    sample_cohort,
)
from perr_lab.errors import AllReplicatesFailed, InvalidParams
from perr_lab.estimators import (
    ESTIMATORS,
    EstimateSet,
    estimate,
    is_failure,
    percentiles,
    summarize_cohort,
)
from perr_lab.validate import (
    validate_dropout_targets,
    validate_nonnegative_integer,
    validate_positive_integer,
    validate_scenario_ids,
)

logger = logging.getLogger(__name__)

MAX_SEED = 2 ** 64
DEFAULT_DROPOUT_TARGETS = (0.0, 0.05, 0.10, 0.15, 0.20)
DEFAULT_COHORT_SIZE = 100_000
DEFAULT_REPLICATES = 10_000
# replicate batches handed to one worker task per worker
BATCHES_PER_WORKER = 4


@dataclass(frozen=True)
class ExperimentGrid:
    """Scenarios, dropout levels and Monte Carlo sizes of one experiment."""

    master_seed: int
    dgp_params: DgpParams = field(default_factory=DgpParams)
    scenarios: Tuple[int, ...] = (1, 2, 3, 4)
    dropout_targets: Tuple[float, ...] = DEFAULT_DROPOUT_TARGETS
    cohort_size: int = DEFAULT_COHORT_SIZE
    n_replicates: int = DEFAULT_REPLICATES

    def __post_init__(self):
        seed = validate_nonnegative_integer("master_seed", self.master_seed)
        if seed >= MAX_SEED:
            raise InvalidParams("master_seed", "must fit into 64 bits")
        if not isinstance(self.dgp_params, DgpParams):
            raise InvalidParams("dgp_params", "must be DgpParams")
        object.__setattr__(self, "master_seed", seed)
        object.__setattr__(
            self, "scenarios", validate_scenario_ids("scenarios", self.scenarios)
        )
        object.__setattr__(
            self,
            "dropout_targets",
            validate_dropout_targets("dropout_targets", self.dropout_targets),
        )
        object.__setattr__(
            self,
            "cohort_size",
            validate_positive_integer("cohort_size", self.cohort_size),
        )
        object.__setattr__(
            self,
            "n_replicates",
            validate_positive_integer("n_replicates", self.n_replicates),
        )

    def cells(self) -> Iterator["GridCell"]:
        """Yield calibrated cells in (scenario, dropout level) order."""
        for scenario_id in self.scenarios:
            for dropout_index, target in enumerate(self.dropout_targets):
                yield calibrate_cell(self, scenario_id, dropout_index)

    def __len__(self):
        return len(self.scenarios) * len(self.dropout_targets)


class GridCell(NamedTuple):
    """One (scenario, dropout level) combination with its calibrated intercept."""

    scenario_id: int
    dropout_index: int
    dropout_target: float
    gamma0: float

    @property
    def spec(self):
        return ScenarioSpec(self.scenario_id, self.dropout_target)


class ReplicateResult(NamedTuple):
    scenario_id: int
    dropout_target: float
    replicate_index: int
    estimates: EstimateSet
    realized_dropout_fraction: float


@dataclass(frozen=True)
class SummaryRow:
    """Aggregated estimates of one (scenario, dropout level, estimator) cell."""

    scenario_id: int
    dropout_target: float
    estimator: str
    mean: Optional[float]
    p2_5: Optional[float]
    p97_5: Optional[float]
    n_used: int
    n_failed: int
    oracle: Optional[float]

    def __post_init__(self):
        if self.estimator not in ESTIMATORS:
            raise InvalidParams("estimator", f"must be one of {ESTIMATORS}")
        if self.n_used and self.p2_5 > self.p97_5:
            raise InvalidParams("p2_5", "must not exceed p97_5")

    @property
    def sort_key(self):
        return (self.scenario_id, self.dropout_target, self.estimator)


def calibrate_cell(grid: ExperimentGrid, scenario_id: int, dropout_index: int):
    """Return GridCell with the intercept calibrated for its dropout target."""
    target = grid.dropout_targets[dropout_index]
    gamma0 = calibrate_dropout_intercept(
        grid.dgp_params, ScenarioSpec(scenario_id, target)
    )
    return GridCell(scenario_id, dropout_index, target, gamma0)


def derive_stream(
    master_seed: int, scenario_id: int, dropout_index: int, replicate_index: int
) -> np.random.Generator:
    """
    Return the random stream of one replicate.

    The indices are hashed together with the master seed by NumPy's SeedSequence,
    whose output is guaranteed to be stable across NumPy versions, and feed a PCG64
    generator.
    """
    for name, value in (
        ("master_seed", master_seed),
        ("scenario_id", scenario_id),
        ("dropout_index", dropout_index),
        ("replicate_index", replicate_index),
    ):
        validate_nonnegative_integer(name, value)
    seed_sequence = np.random.SeedSequence(
        entropy=master_seed,
        spawn_key=(scenario_id, dropout_index, replicate_index),
    )
    return np.random.Generator(np.random.PCG64(seed_sequence))


def run_replicate(
    grid: ExperimentGrid, cell: GridCell, replicate_index: int
) -> ReplicateResult:
    """Simulate one cohort of a cell and compute all estimators."""
    rng = derive_stream(
        grid.master_seed, cell.scenario_id, cell.dropout_index, replicate_index
    )
    cohort = sample_cohort(
        grid.dgp_params, cell.spec, cell.gamma0, grid.cohort_size, rng
    )
    return ReplicateResult(
        scenario_id=cell.scenario_id,
        dropout_target=cell.dropout_target,
        replicate_index=replicate_index,
        estimates=estimate(summarize_cohort(cohort)),
        realized_dropout_fraction=cohort.dropout_fraction,
    )


def _run_replicate_batch(grid, cell, replicate_indices):
    return [run_replicate(grid, cell, i) for i in replicate_indices]


def _batches(n_replicates, workers):
    size = max(1, math.ceil(n_replicates / (workers * BATCHES_PER_WORKER)))
    return [range(i, min(i + size, n_replicates)) for i in range(0, n_replicates, size)]


def summarize_replicates(
    cell: GridCell, results: List[ReplicateResult], oracle: PopulationEstimands
) -> List[SummaryRow]:
    """
    Aggregate replicate results of one cell into one SummaryRow per estimator.

    Failed replicates are excluded from mean and percentiles and counted in n_failed.
    """
    results = sorted(results, key=lambda r: r.replicate_index)
    rows = []
    for name in ESTIMATORS:
        values = [
            getattr(r.estimates, name)
            for r in results
            if not is_failure(getattr(r.estimates, name))
        ]
        n_failed = len(results) - len(values)
        oracle_value = getattr(oracle, name)
        oracle_value = None if is_failure(oracle_value) else float(oracle_value)
        if values:
            lower, upper = percentiles(values, [2.5, 97.5])
            mean, lower, upper = float(np.mean(values)), float(lower), float(upper)
        else:
            warnings.warn(
                AllReplicatesFailed(
                    f"all {len(results)} replicates of {name} failed in scenario "
                    f"{cell.scenario_id} at dropout {cell.dropout_target}"
                )
            )
            mean = lower = upper = None
        rows.append(
            SummaryRow(
                scenario_id=cell.scenario_id,
                dropout_target=cell.dropout_target,
                estimator=name,
                mean=mean,
                p2_5=lower,
                p97_5=upper,
                n_used=len(values),
                n_failed=n_failed,
                oracle=oracle_value,
            )
        )
    return sorted(rows, key=lambda row: row.sort_key)


def run_cell(grid: ExperimentGrid, cell: GridCell, executor=None) -> List[SummaryRow]:
    """Run all replicates of one cell and aggregate them (no rows if cancelled)."""
    executor = executor or Executor(concurrency=None)
    workers = getattr(executor, "max_workers", 1)
    results = [
        result
        for batch in executor.map(
            _run_replicate_batch,
            _batches(grid.n_replicates, workers),
            fargs=(grid, cell),
        )
        for result in batch
    ]
    if executor.cancelled:
        logger.debug(f"scenario {cell.scenario_id}: cancelled, replicates discarded")
        return []
    dropout = np.mean([r.realized_dropout_fraction for r in results])
    logger.debug(
        f"scenario {cell.scenario_id}, dropout target {cell.dropout_target}: "
        f"{len(results)} replicates, mean realized dropout {dropout:.4f}"
    )
    oracle = enumerate_population(grid.dgp_params, cell.spec, cell.gamma0)
    return summarize_replicates(cell, results, oracle)


def iter_experiment(grid: ExperimentGrid, executor=None) -> Iterator[List[SummaryRow]]:
    """Yield the SummaryRows of every grid cell in turn; stop once cancelled."""
    for cell in grid.cells():
        rows = run_cell(grid, cell, executor=executor)
        if not rows:
            return
        yield rows


def run_experiment(
    grid: ExperimentGrid, workers: int = 1, concurrency: str = "processes"
) -> List[SummaryRow]:
    """
    Run the full grid and return SummaryRows sorted by scenario, dropout, estimator.

    Parameters
    ----------
    grid : ExperimentGrid
    workers : int
        Number of parallel workers; 1 runs sequentially. The result does not depend
        on this value.
    concurrency : str
        "processes" or "threads" for workers > 1.

    Returns
    -------
    list of SummaryRow
    """
    workers = validate_positive_integer("workers", workers)
    logger.info(
        f"running {len(grid)} cells x {grid.n_replicates} replicates of "
        f"{grid.cohort_size} persons on {workers} worker(s)"
    )
    with Executor(
        concurrency=None if workers == 1 else concurrency, max_workers=workers
    ) as executor:
        rows = [
            row for cell_rows in iter_experiment(grid, executor) for row in cell_rows
        ]
    return sorted(rows, key=lambda row: row.sort_key)
