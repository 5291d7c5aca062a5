import csv
import runpy
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def run_script(name, *argv, monkeypatch):
    monkeypatch.setattr(sys, "argv", [name, *argv])
    with pytest.raises(SystemExit) as exc:
        runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    return exc.value.code


def test_reproduce_results(tmp_path, monkeypatch, capsys):
    assert run_script("reproduce_results.py", "--out", str(tmp_path), monkeypatch=monkeypatch) == 0
    series = sorted((tmp_path / "series").glob("*.csv"))
    assert len(series) == 30
    assert len(list((tmp_path / "series").glob("*.svg"))) == 30
    with open(tmp_path / "series" / "club-hhi_euclidean_W2.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert float(rows[-1]["value"]) == pytest.approx(0.0468632630927995, abs=1e-12)
    ranking = (tmp_path / "rankings" / "clubs_rectangle_W1.csv").read_text().splitlines()
    assert ranking[1:3] == ["1,Barcelona,64", "1,Real Madrid,64"]


def test_property_battery(tmp_path, monkeypatch, capsys):
    out = tmp_path / "battery.csv"
    assert run_script("property_battery.py", "--trials", "1500", "--csv", str(out), monkeypatch=monkeypatch) == 0
    assert "pattern matches" in capsys.readouterr().out
    assert len(out.read_text().splitlines()) == 1 + 4 * 7
