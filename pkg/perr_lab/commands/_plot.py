import logging

from perr_lab.figure import emit_figure
from perr_lab.io import read_results

logger = logging.getLogger(__name__)


def plot(input_path: str, out_path: str, reference: float = 2.0) -> int:
    """
    Draw a results CSV file as SVG chart.

    Returns
    -------
    Number of plotted result rows.
    """
    rows = read_results(input_path)
    emit_figure(rows, out_path, reference=reference)
    return len(rows)
