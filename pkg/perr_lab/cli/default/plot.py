import click

from perr_lab import commands
from perr_lab.cli import options


@click.command(help="Draw a results CSV file as SVG chart.")
@options.opt_input
@options.opt_out_file
@options.opt_reference
@options.opt_logfile
@options.opt_debug
@options.handle_errors
def plot(input_path, out_path, reference=2.0, debug=False, logfile=None):
    count = commands.plot(input_path, out_path, reference=reference)
    click.echo(f"plotted {count} result rows to {out_path}")
