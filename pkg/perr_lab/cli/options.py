from functools import wraps
import logging

import click

from perr_lab.errors import (
    EmptyInput,
    InvalidParams,
    MalformedRecord,
    NoSolution,
    ParseError,
    RowError,
    SchemaError,
    TooManyFailures,
    ValidationError,
)
from perr_lab.log import set_log_level, setup_logfile


logger = logging.getLogger(__name__)

EXIT_VALIDATION_ERROR = 1
EXIT_IO_ERROR = 2
VALIDATION_ERRORS = (
    EmptyInput,
    InvalidParams,
    MalformedRecord,
    NoSolution,
    ParseError,
    RowError,
    SchemaError,
    TooManyFailures,
    ValidationError,
)


# click callbacks #
###################
def _set_debug_log_level(ctx, param, debug):
    if debug:
        set_log_level(logging.DEBUG)
    return debug


def _setup_logfile(ctx, param, logfile):
    if logfile:
        setup_logfile(logfile)
    return logfile


def _cb_none_concurrency(ctx, param, value):
    return None if value == "none" else value


# error handling #
##################
def handle_errors(func):
    """Print errors as 'Error: <message>' and exit with 1 (invalid input) or 2 (I/O)."""

    @wraps(func)
    def _wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OSError as e:
            logger.debug("I/O error", exc_info=True)
            click.echo(f"Error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_IO_ERROR)
        except VALIDATION_ERRORS as e:
            logger.debug("validation error", exc_info=True)
            click.echo(f"Error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_VALIDATION_ERROR)

    return _wrapper


# click options #
#################
opt_config = click.option(
    "--config",
    "-c",
    type=click.STRING,
    required=True,
    help="JSON run configuration (local path or fsspec URL).",
)
opt_out_dir = click.option(
    "--out",
    "out_dir",
    type=click.STRING,
    help="Output directory (default: 'out' of the configuration).",
)
opt_out_file = click.option(
    "--out",
    "out_path",
    type=click.STRING,
    required=True,
    help="Output file.",
)
opt_input = click.option(
    "--input",
    "-i",
    "input_path",
    type=click.STRING,
    required=True,
    help="Input file (local path or fsspec URL).",
)
opt_workers = click.option(
    "--workers",
    "-w",
    type=click.IntRange(min=1),
    envvar="PERR_LAB_WORKERS",
    help="Number of workers when processing concurrently. [env: PERR_LAB_WORKERS]",
)
opt_concurrency = click.option(
    "--concurrency",
    type=click.Choice(["processes", "threads", "none"]),
    default="processes",
    callback=_cb_none_concurrency,
    help="Decide which Executor to use for concurrent processing.",
)
opt_figure = click.option(
    "--figure", is_flag=True, help="Also draw the results as figure.svg."
)
opt_bootstrap = click.option(
    "--bootstrap",
    type=click.IntRange(min=100),
    help="Number of bootstrap resamples for percentile intervals.",
)
opt_level = click.option(
    "--level",
    type=click.FloatRange(min=0.5, max=1.0, min_open=True, max_open=True),
    default=0.95,
    show_default=True,
    help="Confidence level.",
)
opt_seed = click.option(
    "--seed", type=click.IntRange(min=0), help="Seed of the bootstrap random stream."
)
opt_max_failure_fraction = click.option(
    "--max-failure-fraction",
    type=click.FloatRange(min=0.0, max=1.0),
    default=0.1,
    show_default=True,
    help="Highest tolerated fraction of bootstrap resamples without estimate.",
)
opt_reference = click.option(
    "--reference",
    type=click.FLOAT,
    default=2.0,
    show_default=True,
    help="Height of the reference line (true treatment effect).",
)
opt_logfile = click.option(
    "--logfile",
    "-l",
    type=click.Path(),
    callback=_setup_logfile,
    help="Write debug log infos into file.",
)
opt_verbose = click.option(
    "--verbose", "-v", is_flag=True, help="Print info for each grid cell."
)
opt_no_pbar = click.option("--no-pbar", is_flag=True, help="Deactivate progress bar.")
opt_debug = click.option(
    "--debug",
    "-d",
    is_flag=True,
    callback=_set_debug_log_level,
    help="Deactivate progress bar and print debug log output.",
)
