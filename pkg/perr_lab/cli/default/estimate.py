import click

from perr_lab import commands
from perr_lab.cli import options
from perr_lab.estimators import ESTIMATORS, is_failure


def _fmt(value):
    if value is None:
        return ""
    return str(value) if is_failure(value) else f"{value:.6g}"


@click.command(help="Estimate PERR_Prev, PERR_Comp and RR of a cohort CSV file.")
@options.opt_input
@options.opt_bootstrap
@options.opt_level
@options.opt_seed
@options.opt_max_failure_fraction
@options.opt_logfile
@options.opt_debug
@options.handle_errors
def estimate(input_path, *args, debug=False, logfile=None, **kwargs):
    report = commands.estimate(input_path, *args, **kwargs)
    header = ["estimator", "estimate", "wald_lower", "wald_upper"]
    if report.bootstrap:
        header += ["bootstrap_lower", "bootstrap_upper"]
    click.echo(",".join(header))
    for name in ESTIMATORS:
        wald = report.wald[name]
        fields = [name, _fmt(getattr(report.estimates, name))]
        fields += [""] * 2 if is_failure(wald) else [_fmt(wald.lower), _fmt(wald.upper)]
        if report.bootstrap:
            interval = report.bootstrap[name]
            fields += [_fmt(interval.lower), _fmt(interval.upper)]
        click.echo(",".join(fields))
