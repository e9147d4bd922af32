import logging
import os
from typing import Callable, Union

from perr_lab._processing import Job
from perr_lab.config import (
    RunConfig,
    effective_workers,
    load_config,
    write_config,
)
from perr_lab.figure import emit_figure
from perr_lab.harness import iter_experiment
from perr_lab.io import write_results

logger = logging.getLogger(__name__)

RESULTS_FILE = "results.csv"
CONFIG_FILE = "config.json"
FIGURE_FILE = "figure.svg"


def simulate(
    config: Union[str, dict, RunConfig],
    out_dir: str = None,
    workers: int = None,
    concurrency: str = "processes",
    figure: bool = False,
    msg_callback: Callable = None,
    as_iterator: bool = False,
) -> Job:
    """
    Run the Monte Carlo experiment of a configuration.

    When all grid cells are processed, the results are written to ``results.csv`` and
    the effective configuration to ``config.json`` in the output directory.

    Parameters
    ----------
    config : str, dict or RunConfig
        Configuration as file path, parsed JSON object or RunConfig.
    out_dir : str
        Output directory overriding the configured one.
    workers : int
        Number of workers overriding the configured one (default: CPU count).
    concurrency : str
        "processes", "threads" or None for sequential execution.
    figure : bool
        Also write ``figure.svg``.
    msg_callback : Callable
        Optional callback function for process messages.
    as_iterator : bool
        Returns as generator but with a __len__() property.

    Returns
    -------
    Job yielding the list of SummaryRows of every grid cell.

    Examples
    --------
    >>> list(tqdm.tqdm(simulate("experiment.json", as_iterator=True)))

    Usage within a process bar.
    """

    def _empty_callback(*args):
        pass

    msg_callback = msg_callback or _empty_callback
    config = load_config(config)
    out_dir = out_dir or config.out_dir
    workers = effective_workers(config, workers)
    grid = config.grid
    msg_callback(
        f"simulating {len(grid)} grid cell(s) with {grid.n_replicates} replicate(s) "
        f"of {grid.cohort_size} persons on {workers} worker(s)"
    )
    if workers == 1:
        logger.debug("using sequential Executor because there is only one worker")
        concurrency = None
    return Job(
        _run_grid,
        fargs=(msg_callback, config, out_dir),
        fkwargs=dict(figure=figure),
        executor_concurrency=concurrency,
        executor_kwargs=dict(max_workers=workers),
        as_iterator=as_iterator,
        total=len(grid),
    )


def _run_grid(msg_callback, config, out_dir, executor=None, figure=False):
    rows = []
    for cell_rows in iter_experiment(config.grid, executor=executor):
        rows.extend(cell_rows)
        first = cell_rows[0]
        msg_callback(
            f"scenario {first.scenario_id}, dropout {first.dropout_target:g}: "
            + ", ".join(
                f"{row.estimator}={'n/a' if row.mean is None else f'{row.mean:.4f}'}"
                for row in cell_rows
            )
        )
        yield cell_rows
    if executor is not None and executor.cancelled:
        msg_callback("simulation cancelled, no results written")
        return
    results_path = os.path.join(out_dir, RESULTS_FILE)
    write_results(rows, results_path)
    write_config(config, os.path.join(out_dir, CONFIG_FILE))
    msg_callback(f"results written to {results_path}")
    if figure:
        figure_path = os.path.join(out_dir, FIGURE_FILE)
        emit_figure(rows, figure_path, reference=config.grid.dgp_params.rr_x)
        msg_callback(f"figure written to {figure_path}")
