import os
from pathlib import Path

import pytest

import mrb

FIXTURES = Path(os.environ.get("MRB_FIXTURES_DIR", Path(__file__).resolve().parents[2] / "fixtures"))


def test_crossed_bounds_are_refuted():
    r = mrb.intersect_bounds([0.5, 0.5], [0.6, 0.0], [1.0, 0.4])
    assert r["refuted"]
    assert r["mrb"]["lo"] == pytest.approx(0.4)
    assert r["mrb"]["hi"] == pytest.approx(0.6)


def test_binary_iv_rows():
    assert mrb.binary_iv([0.25] * 4, [0.25] * 4)["row"] == 1
    r = mrb.binary_iv([0.1, 0.5, 0.2, 0.2], [0.7, 0.1, 0.1, 0.1])
    assert r["row"] == 2
    assert not r["inequalities"][0]["pass"]


def test_amiv_worked_example():
    r = mrb.amiv([0.5, 0.5], [[0.1, 0.1], [0.3, 0.5]], [[0.9, 0.9], [0.45, 0.9]])
    assert r["d1"]["z_star"] == 2
    assert r["d1"]["mrb"]["lo"] == pytest.approx(0.40)
    assert r["d1"]["mrb"]["hi"] == pytest.approx(0.675)


def test_three_interval_lattice():
    r = mrb.intervals_lattice({"a1": (1, 2), "a2": (3, 4), "a3": (0, 5)})
    assert r["refuted"]
    assert len(r["minimal_relaxations"]) == 2


def test_validation_error():
    with pytest.raises(ValueError):
        mrb.intersect_bounds([0.5, 0.5], [0.5, 0.0], [0.4, 0.4])


def test_reports_from_fixtures():
    report, markdown, code = mrb.run("binary-iv", FIXTURES / "binary_iv_ii1.json")
    assert code == 2
    assert report["schema"] == "mrb-report/1"
    report, _, code = mrb.run("artstein", FIXTURES / "artstein_two_outcome.json")
    assert code == 0
    with pytest.raises(ValueError):
        mrb.run("lattice", FIXTURES / "missing.json")
