"""
Bias-versus-dropout chart as standalone SVG.

One panel per scenario in a 2x2 layout. Each estimator is drawn as mean markers with
vertical whiskers spanning the 2.5th to 97.5th percentile; PERR_Comp and PERR_Prev are
shifted horizontally by +0.003 and -0.003 so overlapping series stay apart. A dashed
horizontal line marks the true treatment effect.
"""

import logging
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from perr_lab.errors import EmptyInput, ResultsIOError
from perr_lab.io import fs_from_path, makedirs
from perr_lab.io._path import parent_dir

logger = logging.getLogger(__name__)

WIDTH, HEIGHT = 1200, 900
PANEL_WIDTH, PANEL_HEIGHT = WIDTH // 2, (HEIGHT - 40) // 2
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 20, 40, 50
X_OFFSETS = {"perr_prev": -0.003, "perr_comp": 0.003, "rr": 0.0}
COLORS = {"perr_prev": "#1f77b4", "perr_comp": "#d62728", "rr": "#2ca02c"}
LABELS = {"perr_prev": "PERR_Prev", "perr_comp": "PERR_Comp", "rr": "RR"}
WHISKER_BAR = 6


def _num(value):
    return f"{value:.6g}"


class SVG:
    """Minimal SVG document builder."""

    def __init__(self, width, height):
        self.svg = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
        )

    def group_start(self, **attr):
        self.svg += f"<g {self._attributes(attr)}>\n"

    def group_end(self):
        self.svg += "</g>\n"

    def line(self, x1, y1, x2, y2, stroke="black", **attr):
        self.svg += (
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" {self._attributes(attr)}/>\n'
        )

    def circle(self, cx, cy, r, fill, **attr):
        self.svg += (
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r}" fill="{fill}" '
            f"{self._attributes(attr)}/>\n"
        )

    def text(self, x, y, string, **attr):
        self.svg += (
            f'<text x="{x:.2f}" y="{y:.2f}" {self._attributes(attr)}>'
            f"{escape(str(string))}</text>\n"
        )

    @staticmethod
    def _attributes(attr):
        return " ".join(
            f"{key.rstrip('_').replace('_', '-')}={quoteattr(str(value))}"
            for key, value in attr.items()
        )

    def get_svg(self):
        return f"{self.svg}</svg>\n"


class _Scale:
    def __init__(self, low, high, start, end):
        if high <= low:
            low, high = low - 0.5, high + 0.5
        self.low, self.high, self.start, self.end = low, high, start, end

    def __call__(self, value):
        return self.start + (value - self.low) / (self.high - self.low) * (
            self.end - self.start
        )


def _panel(svg, scenario_id, rows, slot, reference):
    left = (slot % 2) * PANEL_WIDTH
    top = 40 + (slot // 2) * PANEL_HEIGHT
    plot_left, plot_right = left + MARGIN_LEFT, left + PANEL_WIDTH - MARGIN_RIGHT
    plot_top, plot_bottom = top + MARGIN_TOP, top + PANEL_HEIGHT - MARGIN_BOTTOM

    targets = sorted({row.dropout_target for row in rows})
    x_pad = max(0.01, 0.05 * (targets[-1] - targets[0]))
    sx = _Scale(targets[0] - x_pad, targets[-1] + x_pad, plot_left, plot_right)
    values = [reference] + [
        v for row in rows for v in (row.mean, row.p2_5, row.p97_5) if v is not None
    ]
    y_pad = 0.05 * (max(values) - min(values))
    sy = _Scale(min(values) - y_pad, max(values) + y_pad, plot_bottom, plot_top)

    svg.group_start(class_="panel", id=f"scenario-{scenario_id}")
    svg.text(
        (plot_left + plot_right) / 2,
        top + 24,
        f"Scenario {scenario_id}",
        text_anchor="middle",
        font_size=16,
    )
    svg.line(plot_left, plot_bottom, plot_right, plot_bottom, class_="axis")
    svg.line(plot_left, plot_bottom, plot_left, plot_top, class_="axis")
    for target in targets:
        svg.line(sx(target), plot_bottom, sx(target), plot_bottom + 5)
        svg.text(
            sx(target),
            plot_bottom + 20,
            _num(target),
            text_anchor="middle",
            font_size=12,
        )
    for tick in np.linspace(sy.low, sy.high, 5):
        svg.line(plot_left - 5, sy(tick), plot_left, sy(tick))
        svg.text(
            plot_left - 8,
            sy(tick) + 4,
            f"{tick:.3g}",
            text_anchor="end",
            font_size=12,
        )
    svg.text(
        (plot_left + plot_right) / 2,
        plot_bottom + 40,
        "Dropout rate",
        text_anchor="middle",
        font_size=13,
    )
    svg.line(
        plot_left,
        sy(reference),
        plot_right,
        sy(reference),
        stroke="gray",
        class_="reference",
        stroke_dasharray="6,4",
        data_y=_num(reference),
    )
    for row in rows:
        if row.mean is None:
            continue
        x = row.dropout_target + X_OFFSETS[row.estimator]
        color = COLORS[row.estimator]
        svg.group_start(
            class_=f"series {row.estimator}",
            data_x=_num(x),
            data_mean=_num(row.mean),
        )
        svg.line(
            sx(x), sy(row.p2_5), sx(x), sy(row.p97_5), stroke=color, class_="whisker"
        )
        for bound in (row.p2_5, row.p97_5):
            svg.line(
                sx(x) - WHISKER_BAR / 2,
                sy(bound),
                sx(x) + WHISKER_BAR / 2,
                sy(bound),
                stroke=color,
                class_="whisker-bar",
            )
        svg.circle(sx(x), sy(row.mean), 4, color, class_="marker")
        svg.group_end()
    svg.group_end()


def render_figure(rows, reference=2.0) -> str:
    """
    Render SummaryRows as SVG document.

    Parameters
    ----------
    rows : list of SummaryRow
    reference : float
        Height of the reference line, usually the true treatment effect.

    Returns
    -------
    SVG document as string; identical rows give identical output.

    Raises
    ------
    EmptyInput if rows is empty.
    """
    rows = sorted(rows, key=lambda row: row.sort_key)
    if not rows:
        raise EmptyInput("no result rows to plot")
    scenarios = sorted({row.scenario_id for row in rows})
    svg = SVG(WIDTH, HEIGHT)
    for offset, estimator in enumerate(LABELS):
        x = 20 + offset * 140
        svg.circle(x, 20, 4, COLORS[estimator], class_="legend")
        svg.text(x + 10, 25, LABELS[estimator], font_size=13)
    for slot, scenario_id in enumerate(scenarios):
        _panel(
            svg,
            scenario_id,
            [row for row in rows if row.scenario_id == scenario_id],
            slot,
            reference,
        )
    return svg.get_svg()


def emit_figure(rows, path, reference=2.0, fs=None, **kwargs):
    """
    Write the bias-versus-dropout chart to a local or remote SVG file.

    Raises
    ------
    EmptyInput if rows is empty.
    ResultsIOError if the file cannot be written.
    """
    document = render_figure(rows, reference=reference)
    fs = fs or fs_from_path(path, **kwargs)
    try:
        makedirs(parent_dir(path), fs=fs)
        with fs.open(path, "w") as dst:
            dst.write(document)
    except OSError as e:
        raise ResultsIOError(f"cannot write figure {path}: {e}")
    logger.debug(f"wrote figure with {len(rows)} rows to {path}")
