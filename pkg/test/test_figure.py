import os
import xml.etree.ElementTree as ET

import pytest

from perr_lab.errors import EmptyInput
from perr_lab.figure import emit_figure, render_figure
from perr_lab.harness import SummaryRow
from perr_lab.io import read_text

SVG_NS = "{http://www.w3.org/2000/svg}"


def _rows(scenarios=(1,), dropout_targets=(0.1,)):
    rows = []
    for scenario_id in scenarios:
        for target in dropout_targets:
            for estimator, mean in [
                ("perr_comp", 2.05),
                ("perr_prev", 1.83),
                ("rr", 3.1),
            ]:
                rows.append(
                    SummaryRow(
                        scenario_id=scenario_id,
                        dropout_target=target,
                        estimator=estimator,
                        mean=mean,
                        p2_5=mean - 0.1,
                        p97_5=mean + 0.1,
                        n_used=100,
                        n_failed=0,
                        oracle=mean,
                    )
                )
    return rows


def _panels(svg):
    root = ET.fromstring(svg.encode("utf-8"))
    return [
        g for g in root.iter(f"{SVG_NS}g") if g.get("class") == "panel"
    ]


def _series(panel):
    return [g for g in panel.iter(f"{SVG_NS}g") if "series" in g.get("class", "")]


def test_single_panel():
    panels = _panels(render_figure(_rows()))
    assert [p.get("id") for p in panels] == ["scenario-1"]
    series = _series(panels[0])
    assert len(series) == 3
    for group in series:
        assert len(group.findall(f"{SVG_NS}circle")) == 1
        # whisker plus two end bars
        assert len(group.findall(f"{SVG_NS}line")) == 3


def test_panel_per_scenario():
    svg = render_figure(_rows(scenarios=(1, 2, 3, 4), dropout_targets=(0.0, 0.1, 0.2)))
    panels = _panels(svg)
    assert [p.get("id") for p in panels] == [f"scenario-{i}" for i in (1, 2, 3, 4)]
    assert all(len(_series(p)) == 9 for p in panels)
    root = ET.fromstring(svg.encode("utf-8"))
    assert root.get("width") == "1200"
    assert root.get("height") == "900"


def test_horizontal_offsets():
    for panel in _panels(render_figure(_rows(dropout_targets=(0.0, 0.15)))):
        for group in _series(panel):
            estimator = group.get("class").split()[1]
            x = float(group.get("data-x"))
            offset = {"perr_comp": 0.003, "perr_prev": -0.003, "rr": 0.0}[estimator]
            assert min(abs(x - 0.0 - offset), abs(x - 0.15 - offset)) < 1e-12


def test_reference_line():
    root = ET.fromstring(render_figure(_rows(), reference=2.0).encode("utf-8"))
    references = [
        line for line in root.iter(f"{SVG_NS}line") if line.get("class") == "reference"
    ]
    assert len(references) == 1
    assert float(references[0].get("data-y")) == 2.0


def test_failed_cells_are_skipped():
    rows = _rows()
    rows[0] = SummaryRow(1, 0.1, "perr_comp", None, None, None, 0, 100, None)
    assert len(_series(_panels(render_figure(rows))[0])) == 2


def test_deterministic():
    assert render_figure(_rows()) == render_figure(list(reversed(_rows())))


def test_empty_input():
    with pytest.raises(EmptyInput):
        render_figure([])


def test_emit_figure(perr_tmpdir):
    path = os.path.join(perr_tmpdir, "figures", "figure.svg")
    emit_figure(_rows(), path)
    assert read_text(path) == render_figure(_rows())
