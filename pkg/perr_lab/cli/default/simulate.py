import click
import tqdm

from perr_lab import commands
from perr_lab._timer import Timer
from perr_lab.cli import options


@click.command(help="Run the Monte Carlo experiment of a configuration.")
@options.opt_config
@options.opt_out_dir
@options.opt_workers
@options.opt_concurrency
@options.opt_figure
@options.opt_logfile
@options.opt_verbose
@options.opt_no_pbar
@options.opt_debug
@options.handle_errors
def simulate(
    config,
    *args,
    debug=False,
    no_pbar=False,
    verbose=False,
    logfile=None,
    **kwargs,
):
    tqdm.tqdm.write(f"preparing to simulate {config}")
    with Timer() as t:
        list(
            tqdm.tqdm(
                commands.simulate(
                    config,
                    *args,
                    as_iterator=True,
                    msg_callback=tqdm.tqdm.write if verbose else None,
                    **kwargs,
                ),
                unit="cell",
                disable=debug or no_pbar,
            )
        )
    tqdm.tqdm.write(f"simulation of {config} finished in {t}")
