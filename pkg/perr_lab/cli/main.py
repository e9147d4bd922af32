"""perr-lab command line tool with subcommands."""

import click
from click_plugins import with_plugins

from perr_lab import __version__
from perr_lab._registered import commands
from perr_lab.cli.default.estimate import estimate
from perr_lab.cli.default.oracle import oracle
from perr_lab.cli.default.plot import plot
from perr_lab.cli.default.simulate import simulate


@with_plugins(commands)
@click.version_option(version=__version__, message="%(version)s")
@click.group()
def main():
    pass


for _command in (estimate, oracle, plot, simulate):
    main.add_command(_command)
