"""
This package contains easy to access functions which otherwise would have to be called via the CLI.
This should make the use from within other scripts, notebooks, etc. easier.
"""
from perr_lab.commands._estimate import EstimateReport, estimate
from perr_lab.commands._oracle import OracleRow, oracle
from perr_lab.commands._plot import plot
from perr_lab.commands._simulate import (
    CONFIG_FILE,
    FIGURE_FILE,
    RESULTS_FILE,
    simulate,
)


__all__ = [
    "CONFIG_FILE",
    "EstimateReport",
    "FIGURE_FILE",
    "OracleRow",
    "RESULTS_FILE",
    "estimate",
    "oracle",
    "plot",
    "simulate",
]
