"""Series CSV files and minimal, deterministic SVG line charts."""

from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from collections.abc import Iterable
from xml.sax.saxutils import escape

SERIES_HEADER = ("label_year", "entity", "value")
RANKING_HEADER = ("rank", "entity", "value")

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#000000", "#8c564b", "#ff7f0e", "#9467bd", "#17becf")

Row = tuple[int, str, "float | None"]


class SeriesFormatError(ValueError):
    pass


def format_value(x: float | None) -> str:
    # 17 significant digits always round-trip a double
    return "" if x is None else format(x, ".17g")


def write_series_csv(rows: Iterable[Row]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SERIES_HEADER)
    for year, entity, value in sorted(rows, key=lambda r: (r[0], r[1])):
        writer.writerow((year, entity, format_value(value)))
    return out.getvalue()


def write_ranking_csv(entries) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RANKING_HEADER)
    for e in entries:
        writer.writerow((e.rank, e.entity, format_value(e.value)))
    return out.getvalue()


def read_series_csv(text: str) -> list[Row]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != SERIES_HEADER:
        raise SeriesFormatError(f"expected header {','.join(SERIES_HEADER)}")
    rows = []
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise SeriesFormatError(f"line {reader.line_num}: expected 3 fields, got {len(row)}")
        try:
            year = int(row[0])
            value = float(row[2]) if row[2].strip() else None
        except ValueError as exc:
            raise SeriesFormatError(f"line {reader.line_num}: {exc}") from None
        if value is not None and not math.isfinite(value):
            raise SeriesFormatError(f"line {reader.line_num}: value is not finite")
        rows.append((year, row[1], value))
    return rows


def _nice_ceiling(x: float) -> float:
    if x <= 0:
        return 1.0
    exp = 10 ** math.floor(math.log10(x))
    for m in (1, 2, 2.5, 5, 10):
        if m * exp >= x:
            return m * exp
    return 10 * exp


def render_svg(rows: Iterable[Row], title: str = "", ylabel: str = "value",
               width: int = 720, height: int = 420) -> str:
    """Draw one line per entity; missing values split that entity's line into segments."""
    series: dict[str, list[tuple[int, float | None]]] = defaultdict(list)
    for year, entity, value in rows:
        series[entity].append((year, value))
    entities = sorted(series)
    years = sorted({y for pts in series.values() for y, _ in pts})
    values = [v for pts in series.values() for _, v in pts if v is not None]

    left, right, top, bottom = 70, 170, 40, 50
    pw, ph = width - left - right, height - top - bottom
    x0, x1 = (years[0], years[-1]) if years else (0, 1)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    ymax = _nice_ceiling(max(values, default=0.0))

    def sx(year: float) -> float:
        return left + (year - x0) / (x1 - x0) * pw

    def sy(value: float) -> float:
        return top + ph - value / ymax * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.2f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')

    out.append('<g class="axes" stroke="black" stroke-width="1">')
    out.append(f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}"/>')
    out.append("</g>")

    out.append('<g class="xticks">')
    for year in years:
        x = sx(year)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle">{year}</text>')
    out.append("</g>")
    out.append('<g class="yticks">')
    for k in range(6):
        v = ymax * k / 5
        y = sy(v)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end">{v:.3g}</text>')
    out.append("</g>")
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 10}" text-anchor="middle">label year</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2:.2f})">{escape(ylabel)}</text>'
    )

    for i, entity in enumerate(entities):
        color = COLORS[i % len(COLORS)]
        out.append(f'<g class="series" data-entity="{escape(entity, {chr(34): "&quot;"})}">')
        segment: list[str] = []
        for year, value in sorted(series[entity], key=lambda p: p[0]) + [(None, None)]:
            if value is None:
                if segment:
                    out.append(
                        f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{" ".join(segment)}"/>'
                    )
                segment = []
            else:
                segment.append(f"{sx(year):.2f},{sy(value):.2f}")
        out.append("</g>")

    out.append('<g class="legend">')
    for i, entity in enumerate(entities):
        y = top + 10 + 18 * i
        lx = left + pw + 15
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 20}" y2="{y}" stroke="{COLORS[i % len(COLORS)]}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{y + 4}">{escape(entity)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
