import click
import pandas as pd

from perr_lab import commands
from perr_lab.cli import options
from perr_lab.estimators import is_failure


@click.command(help="Print the exact asymptotic estimator values of every grid cell.")
@options.opt_config
@options.opt_logfile
@options.opt_debug
@options.handle_errors
def oracle(config, debug=False, logfile=None):
    rows = commands.oracle(config)
    frame = pd.DataFrame(
        [
            [str(value) if is_failure(value) else value for value in row]
            for row in rows
        ],
        columns=["scenario"] + list(commands.OracleRow._fields[1:]),
    )
    click.echo(frame.to_csv(index=False, float_format="%.10g"), nl=False)
