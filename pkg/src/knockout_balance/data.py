"""Knockout-stage participation records, their CSV format, and weighting schemes.

The embedded dataset covers the UEFA Champions League knockout stage from
2003/04 to 2018/19. Seasons are identified by their starting year.
"""

from __future__ import annotations

import csv
import io
import math
import unicodedata
from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property, lru_cache
from importlib import resources

HEADER = ("season", "club", "country", "stage")
ASSET = "ucl_2003_2018.csv"


class Stage(IntEnum):
    """Elimination stage, ordered so that later rounds compare greater."""

    R16 = 1
    QF = 2
    SF = 3
    F = 4
    W = 5


# Teams eliminated at each stage in one season of a 16-team knockout bracket.
STAGE_COUNTS = {Stage.W: 1, Stage.F: 1, Stage.SF: 2, Stage.QF: 4, Stage.R16: 8}


class UnknownSchemeError(KeyError):
    pass


class DatasetSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DatasetValidationError(ValueError):
    def __init__(self, issues: list[ValidationIssue]):
        super().__init__("; ".join(issue.message for issue in issues))
        self.issues = issues


@dataclass(frozen=True)
class WeightScheme:
    name: str
    weights: Mapping[Stage, float]

    def __post_init__(self) -> None:
        missing = set(Stage) - set(self.weights)
        if missing:
            raise ValueError(f"scheme {self.name!r} lacks weights for {sorted(s.name for s in missing)}")
        for stage, w in self.weights.items():
            if not (math.isfinite(w) and w >= 0):
                raise ValueError(f"weight for {stage.name} must be a finite non-negative number, got {w!r}")

    def __getitem__(self, stage: Stage) -> float:
        return self.weights[stage]

    def scaled(self, c: float) -> WeightScheme:
        return WeightScheme(f"{self.name}*{c:g}", {s: c * w for s, w in self.weights.items()})

    def as_tuple(self) -> tuple[float, ...]:
        """Weights ordered W, F, SF, QF, R16."""
        return tuple(self.weights[s] for s in sorted(Stage, reverse=True))


def _scheme(name: str, w: float, f: float, sf: float, qf: float, r16: float) -> WeightScheme:
    return WeightScheme(name, {Stage.W: w, Stage.F: f, Stage.SF: sf, Stage.QF: qf, Stage.R16: r16})


PRESETS = {
    "W1": _scheme("W1", 16, 8, 4, 2, 1),
    "W2": _scheme("W2", 5, 4, 3, 2, 1),
    "W3": _scheme("W3", 6, 5, 4, 3, 2),
    "W4": _scheme("W4", 1, 1, 1, 1, 1),
}


def preset_scheme(name: str) -> WeightScheme:
    try:
        return PRESETS[name.upper()]
    except KeyError:
        raise UnknownSchemeError(f"unknown weighting scheme {name!r}; expected one of {', '.join(PRESETS)}") from None


def weight_of(scheme: WeightScheme, stage: Stage) -> float:
    return scheme[stage]


def parse_scheme(text: str) -> WeightScheme:
    """Resolve ``W1``..``W4`` or a custom ``w:a,b,c,d,e`` (weights for W, F, SF, QF, R16)."""
    if text[:2].lower() == "w:":
        parts = text[2:].split(",")
        if len(parts) != 5:
            raise ValueError(f"custom scheme needs five weights (W,F,SF,QF,R16), got {len(parts)}")
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ValueError(f"custom scheme weights must be numbers: {text!r}") from None
        return _scheme(text, *values)
    return preset_scheme(text)


@dataclass(frozen=True, order=True)
class ParticipationRecord:
    season: int
    club: str
    country: str
    stage: Stage


# Spellings that ASCII folding alone cannot repair.
NAME_FIXES = {
    "Deportivo La Coru?a": "Deportivo La Coruna",
}


def normalize_name(name: str) -> str:
    """Canonical ASCII spelling used to join club and country names."""
    name = unicodedata.normalize("NFKD", name).encode("ascii", "ignore").decode("ascii")
    # folding can drop characters next to spaces, so collapse afterwards
    name = " ".join(name.split())
    return NAME_FIXES.get(name, name)


@dataclass(frozen=True)
class ValidationIssue:
    kind: str  # "multiplicity", "duplicate" or "country"
    message: str
    season: int | None = None
    stage: Stage | None = None
    count: int | None = None
    club: str | None = None


@dataclass(frozen=True, eq=False)
class Dataset:
    """An immutable collection of participation records with lookup tables."""

    records: tuple[ParticipationRecord, ...]
    _by_key: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(sorted(self.records)))
        object.__setattr__(self, "_by_key", {(r.season, r.club): r for r in self.records})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.records == other.records

    def __hash__(self) -> int:
        return hash(self.records)

    def __len__(self) -> int:
        return len(self.records)

    @cached_property
    def seasons(self) -> tuple[int, ...]:
        return tuple(sorted({r.season for r in self.records}))

    @cached_property
    def clubs(self) -> tuple[str, ...]:
        return tuple(sorted({r.club for r in self.records}))

    @cached_property
    def countries(self) -> tuple[str, ...]:
        return tuple(sorted({r.country for r in self.records}))

    @cached_property
    def club_country(self) -> dict[str, str]:
        # first record wins; validate_dataset reports conflicts
        mapping: dict[str, str] = {}
        for r in self.records:
            mapping.setdefault(r.club, r.country)
        return mapping

    @cached_property
    def clubs_by_country(self) -> dict[str, tuple[str, ...]]:
        grouped = defaultdict(set)
        for r in self.records:
            grouped[r.country].add(r.club)
        return {c: tuple(sorted(v)) for c, v in sorted(grouped.items())}

    @cached_property
    def by_season(self) -> dict[int, tuple[ParticipationRecord, ...]]:
        grouped = defaultdict(list)
        for r in self.records:
            grouped[r.season].append(r)
        return {s: tuple(v) for s, v in sorted(grouped.items())}

    def stage(self, season: int, club: str) -> Stage | None:
        r = self._by_key.get((season, club))
        return None if r is None else r.stage

    def get(self, season: int, club: str) -> ParticipationRecord | None:
        return self._by_key.get((season, club))


def validate_dataset(d: Dataset | Iterable[ParticipationRecord]) -> list[ValidationIssue]:
    """Every broken stage multiplicity, duplicate club-season and club with two countries.

    An empty list means the data is a well-formed sequence of 16-team
    knockout brackets.
    """
    records = d.records if isinstance(d, Dataset) else tuple(d)
    issues = []

    per_season = defaultdict(Counter)
    for r in records:
        per_season[r.season][r.stage] += 1
    for season in sorted(per_season):
        counts = per_season[season]
        for stage in sorted(Stage, reverse=True):
            n, want = counts.get(stage, 0), STAGE_COUNTS[stage]
            if n != want:
                issues.append(ValidationIssue(
                    "multiplicity",
                    f"season {season}: {n} record(s) with stage {stage.name}, expected {want}",
                    season=season, stage=stage, count=n,
                ))

    seen = Counter((r.season, r.club) for r in records)
    for (season, club), n in sorted(seen.items()):
        if n > 1:
            issues.append(ValidationIssue(
                "duplicate", f"season {season}: club {club!r} appears {n} times",
                season=season, club=club, count=n,
            ))

    countries = defaultdict(set)
    for r in records:
        countries[r.club].add(r.country)
    for club, cs in sorted(countries.items()):
        if len(cs) > 1:
            issues.append(ValidationIssue(
                "country", f"club {club!r} is listed under several countries: {', '.join(sorted(cs))}",
                club=club, count=len(cs),
            ))
    return issues


def parse_dataset(text: str, *, strict: bool = True) -> Dataset:
    """Parse ``season,club,country,stage`` CSV text.

    With ``strict`` (the default) the result must pass :func:`validate_dataset`;
    pass ``strict=False`` to load a nonconforming file for inspection.

    Raises:
        DatasetSyntaxError: malformed header or row, with its line number.
        DatasetValidationError: strict mode and the data fails validation.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetSyntaxError(1, "empty input, expected header") from None
    if tuple(h.strip() for h in header) != HEADER:
        raise DatasetSyntaxError(1, f"expected header {','.join(HEADER)!r}, got {','.join(header)!r}")

    records = []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise DatasetSyntaxError(line, f"expected 4 fields, got {len(row)}")
        season_s, club, country, stage_s = (c.strip() for c in row)
        try:
            season = int(season_s, 10)
        except ValueError:
            raise DatasetSyntaxError(line, f"season {season_s!r} is not an integer") from None
        if stage_s not in Stage.__members__:
            raise DatasetSyntaxError(line, f"unknown stage {stage_s!r}; expected one of W, F, SF, QF, R16")
        club, country = normalize_name(club), normalize_name(country)
        if not club or not country:
            raise DatasetSyntaxError(line, "club and country must be nonempty")
        records.append(ParticipationRecord(season, club, country, Stage[stage_s]))

    if strict:
        issues = validate_dataset(records)
        if issues:
            raise DatasetValidationError(issues)
    return Dataset(tuple(records))


def serialize_dataset(d: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for r in sorted(d.records, key=lambda r: (r.season, -r.stage, r.club)):
        writer.writerow((r.season, r.club, r.country, r.stage.name))
    return out.getvalue()


def load_dataset(path, *, strict: bool = True) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        return parse_dataset(fh.read(), strict=strict)


@lru_cache(maxsize=1)
def embedded_dataset() -> Dataset:
    """Champions League knockout participants, seasons 2003/04 to 2018/19."""
    text = resources.files(__package__).joinpath("assets", ASSET).read_text(encoding="utf-8")
    return parse_dataset(text)
