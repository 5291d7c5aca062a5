"""Performance shares and competitive balance over rolling windows of seasons.

Score vectors are built at three levels. A club gets one entry per season
in the window (zero when absent). A country gets one entry per club-season
participation of its clubs. A group of countries pools its members'
entries. Shares divide each entity's index value by the total across the
scope, and the Herfindahl-Hirschman index (HHI) sums the squared shares.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

from .data import Dataset, WeightScheme
from .indices import IndexKind, ScoreVector, evaluate, make_score_vector

TOP_FIVE = frozenset({"England", "France", "Germany", "Italy", "Spain"})
DEFAULT_WINDOW = 5


class WindowTooLongError(ValueError):
    pass


class UnknownEntityError(KeyError):
    pass


class UnknownClubError(UnknownEntityError):
    pass


class UnknownCountryError(UnknownEntityError):
    pass


class AllZeroError(ValueError):
    """Every entity in scope has index value zero, so shares are undefined."""


@dataclass(frozen=True, order=True)
class Window:
    first_season: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("a window covers at least one season")

    @property
    def seasons(self) -> range:
        return range(self.first_season, self.first_season + self.length)

    @property
    def last_season(self) -> int:
        return self.first_season + self.length - 1

    @property
    def label(self) -> int:
        """Calendar year in which the last covered season finished."""
        return self.first_season + self.length

    def __str__(self) -> str:
        return f"{self.first_season}-{self.last_season}"


@dataclass(frozen=True)
class Clubs:
    name = "clubs"


@dataclass(frozen=True)
class Countries:
    name = "countries"


@dataclass(frozen=True)
class TwoGroups:
    """The listed countries pooled into one entity, everyone else into another."""

    members: frozenset[str] = TOP_FIVE
    label: str = "Top five"
    other_label: str = "Other"

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))

    @property
    def name(self) -> str:
        return "top5-vs-rest"


@dataclass(frozen=True)
class WithinCountry:
    country: str

    @property
    def name(self) -> str:
        return f"within-country:{self.country}"


EntityScope = Union[Clubs, Countries, TwoGroups, WithinCountry]


@dataclass(frozen=True)
class ShareTable:
    shares: dict[str, float]
    kind: IndexKind
    scheme: str | None = None

    def __getitem__(self, entity: str) -> float:
        return self.shares[entity]


@dataclass(frozen=True)
class BalanceSeries:
    """HHI per window label; ``None`` marks a window where the scope scored nothing."""

    points: tuple[tuple[int, float | None], ...]

    def __getitem__(self, label: int) -> float | None:
        for year, value in self.points:
            if year == label:
                return value
        raise KeyError(label)

    def as_dict(self) -> dict[int, float | None]:
        return dict(self.points)


@dataclass(frozen=True)
class RankedEntry:
    entity: str
    value: float
    rank: int


@dataclass(frozen=True)
class RankedList:
    entries: tuple[RankedEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def top(self, k: int) -> RankedList:
        """Entries ranked k or better, so a tie straddling position k is kept whole."""
        return RankedList(tuple(e for e in self.entries if e.rank <= k))

    def names(self) -> list[str]:
        return [e.entity for e in self.entries]

    def rank_of(self, entity: str) -> int:
        for e in self.entries:
            if e.entity == entity:
                return e.rank
        raise UnknownEntityError(entity)


def rolling_windows(d: Dataset, length: int = DEFAULT_WINDOW) -> list[Window]:
    """Every run of ``length`` consecutive seasons present in the data, oldest first."""
    if length < 1:
        raise ValueError("window length must be positive")
    seasons = set(d.seasons)
    if length > len(seasons):
        raise WindowTooLongError(f"window of {length} seasons exceeds the {len(seasons)} available")
    return [
        Window(s, length)
        for s in sorted(seasons)
        if all(s + k in seasons for k in range(length))
    ]


def full_window(d: Dataset) -> Window:
    return Window(d.seasons[0], d.seasons[-1] - d.seasons[0] + 1)


def _check_window(d: Dataset, w: Window) -> None:
    missing = [s for s in w.seasons if s not in d.by_season]
    if missing:
        raise ValueError(f"window {w} covers seasons missing from the data: {missing}")


def club_vector(d: Dataset, club: str, w: Window, s: WeightScheme) -> ScoreVector:
    if club not in d.club_country:
        raise UnknownClubError(club)
    entries = []
    for season in w.seasons:
        stage = d.stage(season, club)
        entries.append(0.0 if stage is None else s[stage])
    return make_score_vector(entries)


def country_vector(d: Dataset, country: str, w: Window, s: WeightScheme) -> ScoreVector:
    if country not in d.clubs_by_country:
        raise UnknownCountryError(country)
    return make_score_vector(
        s[r.stage] for season in w.seasons for r in d.by_season.get(season, ()) if r.country == country
    )


def group_vector(d: Dataset, countries: Iterable[str], w: Window, s: WeightScheme) -> ScoreVector:
    entries: list[float] = []
    for country in sorted(set(countries)):
        entries.extend(country_vector(d, country, w, s))
    return make_score_vector(entries)


def _validate_scope(d: Dataset, scope: EntityScope) -> None:
    if isinstance(scope, WithinCountry) and scope.country not in d.clubs_by_country:
        raise UnknownCountryError(scope.country)
    if isinstance(scope, TwoGroups):
        unknown = sorted(scope.members - set(d.countries))
        if unknown:
            raise UnknownCountryError(", ".join(unknown))


def entity_vectors(d: Dataset, scope: EntityScope, w: Window, s: WeightScheme) -> dict[str, ScoreVector]:
    """Score vector of every entity the scope compares within window ``w``."""
    _validate_scope(d, scope)
    _check_window(d, w)
    if isinstance(scope, Clubs):
        return {club: club_vector(d, club, w, s) for club in d.clubs}
    if isinstance(scope, Countries):
        return {country: country_vector(d, country, w, s) for country in d.countries}
    if isinstance(scope, TwoGroups):
        rest = set(d.countries) - scope.members
        return {
            scope.label: group_vector(d, scope.members, w, s),
            scope.other_label: group_vector(d, rest, w, s),
        }
    if isinstance(scope, WithinCountry):
        return {club: club_vector(d, club, w, s) for club in d.clubs_by_country[scope.country]}
    raise TypeError(f"unsupported scope {scope!r}")


def shares(vectors: Mapping[str, ScoreVector], kind: IndexKind, scheme: str | None = None) -> ShareTable:
    kind = IndexKind(kind)
    values = {entity: float(evaluate(kind, v)) for entity, v in vectors.items()}
    total = math.fsum(values.values())
    if total <= 0:
        raise AllZeroError(f"all {len(values)} entities have zero {kind.value} index")
    return ShareTable({e: x / total for e, x in values.items()}, kind, scheme)


def hhi(t: ShareTable) -> float:
    return math.fsum(x * x for x in t.shares.values())


def share_table(d: Dataset, scope: EntityScope, kind: IndexKind, s: WeightScheme, w: Window) -> ShareTable:
    return shares(entity_vectors(d, scope, w, s), kind, s.name)


def _map_windows(fn, windows: Sequence[Window], workers: int | None):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, windows))
    return [fn(w) for w in windows]


def balance_series(
    d: Dataset,
    scope: EntityScope,
    kind: IndexKind,
    s: WeightScheme,
    window_len: int = DEFAULT_WINDOW,
    *,
    workers: int | None = None,
) -> BalanceSeries:
    """HHI of the scope's shares for each rolling window."""
    _validate_scope(d, scope)

    def point(w: Window) -> tuple[int, float | None]:
        try:
            return w.label, hhi(share_table(d, scope, kind, s, w))
        except AllZeroError:
            return w.label, None

    return BalanceSeries(tuple(_map_windows(point, rolling_windows(d, window_len), workers)))


def _scope_entities(d: Dataset, scope: EntityScope) -> set[str]:
    if isinstance(scope, Clubs):
        return set(d.clubs)
    if isinstance(scope, Countries):
        return set(d.countries)
    if isinstance(scope, TwoGroups):
        return {scope.label, scope.other_label}
    return set(d.clubs_by_country[scope.country])


def share_series(
    d: Dataset,
    scope: EntityScope,
    entity: str,
    kind: IndexKind,
    s: WeightScheme,
    window_len: int = DEFAULT_WINDOW,
    *,
    workers: int | None = None,
) -> list[tuple[int, float | None]]:
    """The entity's share in each rolling window (``None`` if nobody in scope scored)."""
    _validate_scope(d, scope)
    if entity not in _scope_entities(d, scope):
        raise UnknownEntityError(f"{entity!r} is not an entity of scope {scope.name}")

    def point(w: Window) -> tuple[int, float | None]:
        try:
            return w.label, share_table(d, scope, kind, s, w)[entity]
        except AllZeroError:
            return w.label, None

    return _map_windows(point, rolling_windows(d, window_len), workers)


def rank_values(values: Mapping[str, float], rel_tol: float = 1e-12) -> RankedList:
    """Standard competition ranking (1, 2, 2, 4); ties listed alphabetically."""
    ordered = sorted(values.items(), key=lambda kv: -kv[1])
    groups: list[list[tuple[str, float]]] = []
    for entity, value in ordered:
        if groups and math.isclose(value, groups[-1][0][1], rel_tol=rel_tol, abs_tol=1e-12):
            groups[-1].append((entity, value))
        else:
            groups.append([(entity, value)])
    entries = []
    for group in groups:
        rank = len(entries) + 1
        entries.extend(RankedEntry(e, v, rank) for e, v in sorted(group))
    return RankedList(tuple(entries))


def rank_entities(d: Dataset, scope: EntityScope, kind: IndexKind, s: WeightScheme, w: Window) -> RankedList:
    vectors = entity_vectors(d, scope, w, s)
    return rank_values({e: float(evaluate(kind, v)) for e, v in vectors.items()})
