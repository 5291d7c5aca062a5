"""Regenerate every share/HHI series, its SVG chart, and the full-period rankings.

Usage:
    python scripts/reproduce_results.py --out results/

Writes one CSV and one SVG per (chart, index, scheme) panel plus
``rankings/*.csv`` with full rankings over the whole period.
"""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass, field
from pathlib import Path

from knockout_balance import (
    Clubs,
    Countries,
    TwoGroups,
    WithinCountry,
    balance_series,
    embedded_dataset,
    full_window,
    preset_scheme,
    rank_entities,
    share_series,
)
from knockout_balance.plotting import render_svg, write_ranking_csv, write_series_csv

log = logging.getLogger("reproduce")

TOP_CLUBS = ("Arsenal", "Barcelona", "Bayern Munich", "Chelsea", "Liverpool", "Real Madrid")
TOP_COUNTRIES = ("England", "France", "Germany", "Italy", "Spain")


@dataclass(frozen=True)
class ChartSpec:
    """One multi-panel chart: a measure over rolling windows for several index/scheme pairs."""

    name: str
    measure: str  # "share" or "hhi"
    scope: str  # clubs, countries, top5-vs-rest or within-country
    panels: tuple[tuple[str, str], ...]
    entities: tuple[str, ...] = field(default_factory=tuple)
    window_len: int = 5


CHARTS = (
    ChartSpec("club-shares", "share", "clubs",
              (("euclidean", "W2"), ("euclidean", "W3"), ("rectangle", "W2"), ("rectangle", "W3")), TOP_CLUBS),
    ChartSpec("country-shares", "share", "countries",
              (("euclidean", "W2"), ("euclidean", "W3"), ("rectangle", "W1"), ("rectangle", "W2")), TOP_COUNTRIES),
    ChartSpec("club-hhi", "hhi", "clubs",
              (("euclidean", "W2"), ("euclidean", "W3"), ("euclidean", "W4"),
               ("rectangle", "W2"), ("rectangle", "W3"), ("rectangle", "W4"))),
    ChartSpec("country-hhi", "hhi", "countries",
              (("euclidean", "W2"), ("euclidean", "W3"), ("euclidean", "W4"),
               ("rectangle", "W1"), ("rectangle", "W2"), ("rectangle", "W3"))),
    ChartSpec("group-hhi", "hhi", "top5-vs-rest",
              (("euclidean", "W2"), ("euclidean", "W3"), ("euclidean", "W4"),
               ("rectangle", "W1"), ("rectangle", "W2"), ("rectangle", "W3"))),
    ChartSpec("within-country-hhi", "hhi", "within-country",
              (("euclidean", "W2"), ("euclidean", "W3"), ("rectangle", "W1"), ("rectangle", "W2")), TOP_COUNTRIES),
)

RANKINGS = (
    ("clubs", "euclidean", "W2"), ("clubs", "euclidean", "W3"), ("clubs", "euclidean", "W4"),
    ("clubs", "rectangle", "W1"), ("clubs", "rectangle", "W2"), ("clubs", "rectangle", "W3"),
    ("countries", "euclidean", "W2"), ("countries", "euclidean", "W3"), ("countries", "euclidean", "W4"),
    ("countries", "rectangle", "W1"), ("countries", "rectangle", "W2"), ("countries", "rectangle", "W3"),
)


def _scope(name: str, country: str | None = None):
    return {"clubs": Clubs(), "countries": Countries(), "top5-vs-rest": TwoGroups()}.get(name) or WithinCountry(country)


def chart_rows(d, chart: ChartSpec, kind: str, scheme_name: str) -> list:
    scheme = preset_scheme(scheme_name)
    rows = []
    if chart.measure == "share":
        for entity in chart.entities:
            rows += [(y, entity, v) for y, v in share_series(d, _scope(chart.scope), entity, kind, scheme, chart.window_len)]
    elif chart.scope == "within-country":
        for country in chart.entities:
            series = balance_series(d, _scope(chart.scope, country), kind, scheme, chart.window_len)
            rows += [(y, country, v) for y, v in series.points]
    else:
        series = balance_series(d, _scope(chart.scope), kind, scheme, chart.window_len)
        rows += [(y, chart.scope, v) for y, v in series.points]
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    d = embedded_dataset()
    (args.out / "series").mkdir(parents=True, exist_ok=True)
    (args.out / "rankings").mkdir(parents=True, exist_ok=True)

    for chart in CHARTS:
        for kind, scheme in chart.panels:
            stem = f"{chart.name}_{kind}_{scheme}"
            rows = chart_rows(d, chart, kind, scheme)
            (args.out / "series" / f"{stem}.csv").write_text(write_series_csv(rows))
            title = f"{chart.name.replace('-', ' ')}: {kind} index, weighting {scheme}"
            (args.out / "series" / f"{stem}.svg").write_text(render_svg(rows, title=title, ylabel=chart.measure))
            log.info("wrote %s", stem)

    window = full_window(d)
    for scope, kind, scheme in RANKINGS:
        ranked = rank_entities(d, _scope(scope), kind, preset_scheme(scheme), window)
        path = args.out / "rankings" / f"{scope}_{kind}_{scheme}.csv"
        path.write_text(write_ranking_csv(ranked))
        log.info("%s %s %s top five: %s", scope, kind, scheme, ", ".join(ranked.top(5).names()))

    print(f"wrote {sum(len(c.panels) for c in CHARTS)} series and {len(RANKINGS)} rankings to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
