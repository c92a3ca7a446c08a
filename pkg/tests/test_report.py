import csv
import io
import json

import pytest

from segrecm.families import Segre3Params, Veronese2Params
from segrecm.plotting import figure_bytes, region_map_figure, verify_summary_figure
from segrecm.report import (
    SEGRE3_COLUMNS,
    VERONESE2_COLUMNS,
    ClassRecord,
    InvariantViolation,
    region_map,
    render_csv,
    render_json,
    render_text,
    segre3_report,
    veronese2_report,
)


def test_class_record_invariant():
    with pytest.raises(InvariantViolation):
        ClassRecord((1, 2), cm=False, conic=True, certificate={})
    assert ClassRecord(0, cm=True, conic=False, certificate={}).cell == "M"


def test_segre3_report_counts():
    r = segre3_report(Segre3Params(2, 2, 2))
    assert r.counts["cm"] == 13 and r.counts["conic"] == 7
    assert r.formulas["cm_agrees"] and r.formulas["conic_agrees"]
    assert not [d for d in r.discrepancies if d["severity"] == "hard"]


def test_csv_schema():
    rows = list(csv.reader(io.StringIO(render_csv(segre3_report(Segre3Params(2, 2, 2), display=(-2, 2))))))
    assert rows[0] == SEGRE3_COLUMNS and len(rows) == 1 + 25
    vrows = list(csv.reader(io.StringIO(render_csv(veronese2_report(Veronese2Params(2, 2, 2, 1))))))
    assert vrows[0] == VERONESE2_COLUMNS
    assert {r[1] for r in vrows[1:]} == {"CM", "NotCM"}


def test_json_shape():
    data = json.loads(render_json(veronese2_report(Veronese2Params(3, 2, 2, 3))))
    assert set(data) >= {"params", "counts", "formulas", "classes", "discrepancies"}
    assert 5 in data["counts"]["cm_outside_guaranteed"]
    assert any(d["kind"] == "conic-formula" and d["severity"] == "soft" for d in data["discrepancies"])


def test_region_map_text():
    text = region_map(segre3_report(Segre3Params(2, 2, 2), display=(-1, 1)))
    assert text.splitlines()[:3] == ["j= 1 |  M  C  C", "j= 0 |  C  C  C", "j=-1 |  C  C  M"]
    assert render_text(veronese2_report(Veronese2Params(2, 2, 1, 1))).count("agree") == 1


def test_formula_level_note():
    r = veronese2_report(Veronese2Params(1, 1, 2, 3))
    assert any("formula-level" in n for n in r.notes)
    assert all(rec.certificate["formula_level"] for rec in r.classes)


def test_svg_is_deterministic():
    r = segre3_report(Segre3Params(2, 2, 2))
    a = figure_bytes(region_map_figure(r), "svg")
    b = figure_bytes(region_map_figure(r), "svg")
    assert a == b and a.lstrip().startswith(b"<?xml")


def test_veronese_figure_and_summary_render():
    r = veronese2_report(Veronese2Params(2, 3, 2, 1))
    assert figure_bytes(region_map_figure(r), "png").startswith(b"\x89PNG")
    fig = verify_summary_figure([{"cm": 13, "conic": 7}, {"cm": 20, "conic": 10}],
                                [{"enumerated": 5, "formula": 4}, {"enumerated": 3, "formula": 3}])
    assert b"<svg" in figure_bytes(fig, "svg")
