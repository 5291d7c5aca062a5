import csv
import io
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knockout_balance.cli import ENV_DATASET, main
from knockout_balance.data import serialize_dataset
from knockout_balance.plotting import format_value, read_series_csv, render_svg, write_series_csv

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))[1:]


@pytest.fixture
def short_season(tmp_path, ucl):
    lines = serialize_dataset(ucl).splitlines(keepends=True)
    # drop one round-of-16 record from 2010
    drop = next(i for i, l in enumerate(lines) if l.startswith("2010,") and l.rstrip().endswith(",R16"))
    path = tmp_path / "short.csv"
    path.write_text("".join(lines[:drop] + lines[drop + 1:]))
    return path


class TestValidate:
    def test_embedded(self, capsys):
        code, out, _ = run(capsys, "validate")
        assert code == 0
        assert "256 records" in out

    def test_short_season(self, capsys, short_season):
        code, out, _ = run(capsys, "validate", str(short_season))
        assert code == 1
        assert "season 2010" in out

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "nope.csv"))
        assert code == 2
        assert "cannot read" in err

    def test_malformed_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("season,club,country,stage\n2003,Porto,Portugal,WINNER\n")
        assert run(capsys, "validate", str(bad))[0] == 2

    def test_broken_data_rejected_by_analysis_commands(self, capsys, short_season):
        code, _, err = run(capsys, "hhi", "--data", str(short_season))
        assert code == 1
        assert "2010" in err


class TestRank:
    def test_club_top_five(self, capsys):
        code, out, _ = run(capsys, "rank", "--entity", "club", "--index", "euclidean", "--weights", "W2", "--top", "5")
        assert code == 0
        assert out.splitlines()[0] == "rank,entity,value"
        assert [r[1] for r in rows(out)] == ["Barcelona", "Real Madrid", "Bayern Munich", "Liverpool", "Chelsea"]

    def test_country_rectangle_w1(self, capsys):
        code, out, _ = run(capsys, "rank", "--entity", "country", "--index", "rectangle", "--weights", "W1", "--top", "5")
        assert code == 0
        assert [r[1] for r in rows(out)] == ["Spain", "England", "Italy", "Germany", "France"]
        assert [r[2] for r in rows(out)] == ["128", "88", "40", "36", "26"]

    def test_top_keeps_ties(self, capsys):
        _, out, _ = run(capsys, "rank", "--index", "rectangle", "--weights", "W1", "--top", "4")
        assert [(r[0], r[1]) for r in rows(out)] == [
            ("1", "Barcelona"), ("1", "Real Madrid"), ("3", "Liverpool"), ("4", "Bayern Munich"), ("4", "Chelsea"),
        ]

    def test_h_index_matches_oracle(self, capsys):
        import oracle

        code, out, _ = run(capsys, "rank", "--entity", "club", "--index", "hindex", "--weights", "W2")
        assert code == 0
        got = {r[1]: float(r[2]) for r in rows(out)}
        per_club = {}
        for r in oracle.load_rows():
            per_club.setdefault(r["club"], []).append(oracle.WEIGHTS["W2"][r["stage"]])
        assert got == {c: oracle.hidx(v) for c, v in per_club.items()}
        assert got["Real Madrid"] == 4

    def test_window_flags(self, capsys):
        _, out, _ = run(capsys, "rank", "--scope", "within-country", "--country", "Portugal",
                        "--first-season", "2014", "--window-len", "5")
        assert [r[1] for r in rows(out)] == ["Porto", "Benfica", "Sporting CP"]

    @pytest.mark.parametrize(
        "argv",
        [
            ["rank", "--weights", "W9"],
            ["rank", "--weights", "w:1,2"],
            ["rank", "--index", "median"],
            ["rank", "--entity", "club", "--scope", "clubs"],
            ["rank", "--scope", "within-country"],
            ["rank", "--first-season", "2016", "--window-len", "5"],
            ["rank", "--scope", "within-country", "--country", "Wales"],
            ["frobnicate"],
            [],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestSeries:
    def test_club_hhi(self, capsys):
        code, out, _ = run(capsys, "hhi", "--scope", "clubs", "--index", "euclidean", "--weights", "W2")
        assert code == 0
        body = rows(out)
        assert [int(r[0]) for r in body] == list(range(2008, 2020))
        assert {r[1] for r in body} == {"clubs"}
        assert float(body[-1][2]) == pytest.approx(0.0468632630927995, abs=1e-12)

    def test_country_share(self, capsys):
        _, out, _ = run(capsys, "share", "--scope", "countries", "--entity", "Spain", "--index", "euclidean", "--weights", "W2")
        assert ["2019", "Spain"] == rows(out)[-1][:2]
        assert float(rows(out)[-1][2]) == pytest.approx(0.235456195194973, abs=1e-12)

    def test_within_country_hhi(self, capsys):
        _, out, _ = run(capsys, "hhi", "--scope", "within-country", "--country", "France", "--country", "Spain")
        france = {r[0]: float(r[2]) for r in rows(out) if r[1] == "France"}
        assert france["2017"] == pytest.approx(0.502242197555604, abs=1e-12)
        assert {r[1] for r in rows(out)} == {"France", "Spain"}

    def test_rows_sorted_by_year_then_entity(self, capsys):
        _, out, _ = run(capsys, "share", "--entity", "Real Madrid", "--entity", "Barcelona")
        keys = [(int(r[0]), r[1]) for r in rows(out)]
        assert keys == sorted(keys)
        assert len(keys) == 24

    def test_custom_weights(self, capsys):
        # W2 written out by hand must give the same bytes
        _, preset, _ = run(capsys, "hhi", "--weights", "W2")
        _, custom, _ = run(capsys, "hhi", "--weights", "w:5,4,3,2,1")
        assert preset == custom

    def test_full_period_window(self, capsys):
        _, out, _ = run(capsys, "hhi", "--scope", "countries", "--window-len", "16")
        assert [r[0] for r in rows(out)] == ["2019"]

    def test_window_too_long(self, capsys):
        assert run(capsys, "hhi", "--window-len", "17")[0] == 2

    def test_missing_point_is_empty_field(self, capsys, tmp_path):
        text = "season,club,country,stage\n" + "".join(
            f"{s},C{i},X{i % 2},{stage}\n"
            for s in (2000, 2001)
            for i, stage in enumerate(["W", "F", "SF", "SF"] + ["QF"] * 4 + ["R16"] * 8)
        )
        path = tmp_path / "tiny.csv"
        path.write_text(text)
        code, out, _ = run(capsys, "hhi", "--data", str(path), "--scope", "within-country", "--country", "X1",
                           "--weights", "w:1,0,0,0,0", "--window-len", "1")
        assert code == 0
        assert rows(out) == [["2001", "X1", ""], ["2002", "X1", ""]]

    def test_unknown_entity(self, capsys):
        assert run(capsys, "share", "--entity", "Atlantis FC")[0] == 2

    def test_env_dataset(self, capsys, monkeypatch, short_season, tmp_path, ucl):
        monkeypatch.setenv(ENV_DATASET, str(short_season))
        assert run(capsys, "hhi")[0] == 1
        # --data wins over the environment
        _, embedded, _ = run(capsys, "hhi", "--data", str(self._copy(tmp_path, ucl)))
        monkeypatch.delenv(ENV_DATASET)
        assert run(capsys, "hhi")[1] == embedded

    @staticmethod
    def _copy(tmp_path, ucl):
        good = tmp_path / "good.csv"
        good.write_text(serialize_dataset(ucl))
        return good

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code, out, _ = run(capsys, "hhi", "-o", str(target))
        assert code == 0 and out == ""
        assert target.read_text().startswith("label_year,entity,value\n")

    def test_deterministic(self, capsys):
        first = run(capsys, "hhi", "--scope", "top5-vs-rest", "--index", "rectangle")
        second = run(capsys, "hhi", "--scope", "top5-vs-rest", "--index", "rectangle")
        assert first == second

    def test_warnings_go_to_stderr(self, capsys):
        code, out, err = run(capsys, "hhi", "--weights", "W1")
        assert code == 0 and "warning" in err and "warning" not in out
        assert "note" in run(capsys, "hhi", "--index", "rectangle", "--weights", "W4")[2]


class TestAxioms:
    def test_seeded_run_is_repeatable(self, capsys):
        first = run(capsys, "axioms", "--seed", "42", "--trials", "1500")
        second = run(capsys, "axioms", "--seed", "42", "--trials", "1500")
        assert first == second
        assert first[0] == 0
        assert "pattern matches" in first[1]

    def test_report_contents(self, capsys):
        _, out, _ = run(capsys, "axioms", "--trials", "1500")
        lines = {l.split("  ")[0]: l for l in out.splitlines()}
        assert "x(" in lines["uniform citation"]
        assert "independence: violated (f(x)=5, f(y)=6, f(x')=10, f(y')=9)" in out
        assert "sqrt(n) restores uniform citation: yes" in out


class TestPlot:
    def _csv(self, tmp_path, rows_, name="in.csv"):
        path = tmp_path / name
        path.write_text(write_series_csv(rows_))
        return path

    def _svg(self, capsys, tmp_path, src):
        out = tmp_path / "out.svg"
        code = run(capsys, "plot", str(src), "-o", str(out), "--title", "HHI & co")[0]
        assert code == 0
        return out.read_text(), ET.fromstring(out.read_bytes())

    def test_single_series(self, capsys, tmp_path):
        src = tmp_path / "hhi.csv"
        assert run(capsys, "hhi", "-o", str(src))[0] == 0
        text, root = self._svg(capsys, tmp_path, src)
        lines = root.findall(f".//{SVG}polyline")
        assert len(lines) == 1
        assert len(lines[0].get("points").split()) == 12
        assert root.get("version") == "1.1"
        assert "HHI &amp; co" in text

    def test_empty_series(self, capsys, tmp_path):
        _, root = self._svg(capsys, tmp_path, self._csv(tmp_path, []))
        assert root.findall(f".//{SVG}polyline") == []
        assert root.find(f".//{SVG}g[@class='axes']") is not None

    def test_gap_breaks_line(self, capsys, tmp_path):
        pts = [(2008 + i, "A", None if i in (3, 4) else 0.1 * i) for i in range(10)]
        _, root = self._svg(capsys, tmp_path, self._csv(tmp_path, pts))
        lines = root.findall(f".//{SVG}polyline")
        assert [len(l.get("points").split()) for l in lines] == [3, 5]

    def test_one_group_per_entity(self, capsys, tmp_path):
        pts = [(2008 + i, e, 0.2) for i in range(4) for e in ("B", "A", "C")]
        _, root = self._svg(capsys, tmp_path, self._csv(tmp_path, pts))
        groups = root.findall(f".//{SVG}g[@class='series']")
        assert [g.get("data-entity") for g in groups] == ["A", "B", "C"]

    def test_byte_identical(self):
        pts = [(2008 + i, "A", 0.05 * i) for i in range(12)]
        assert render_svg(pts, "t") == render_svg(list(reversed(pts)), "t")

    @pytest.mark.parametrize(
        "content",
        ["year,entity,value\n2008,A,1\n", "label_year,entity,value\n2008,A\n", "label_year,entity,value\nx,A,1\n",
         "label_year,entity,value\n2008,A,inf\n"],
    )
    def test_malformed_input(self, capsys, tmp_path, content):
        src = tmp_path / "bad.csv"
        src.write_text(content)
        assert run(capsys, "plot", str(src), "-o", str(tmp_path / "x.svg"))[0] == 2

    def test_missing_input(self, capsys, tmp_path):
        assert run(capsys, "plot", str(tmp_path / "none.csv"), "-o", str(tmp_path / "x.svg"))[0] == 2


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_printed_numbers_round_trip(x):
    assert float(format_value(x)) == x
    assert read_series_csv(write_series_csv([(2008, "e", x)])) == [(2008, "e", x)]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "knockout_balance", "validate"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "OK" in proc.stdout
