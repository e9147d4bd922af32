"""Entry points of subcommands provided by other packages."""

from importlib import metadata


def _entry_points(group):
    entry_points = metadata.entry_points()
    if hasattr(entry_points, "select"):
        return entry_points.select(group=group)
    # PY39 returns a dict of groups
    return entry_points.get(group, ())  # pragma: no cover


commands = _entry_points("perr_lab.cli.commands")
