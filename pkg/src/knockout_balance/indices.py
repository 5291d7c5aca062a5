"""Score vectors and the aggregation indices evaluated on them."""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum


class ScoreError(ValueError):
    """Base class for invalid score input."""


class NegativeScoreError(ScoreError):
    pass


class NonFiniteScoreError(ScoreError):
    pass


@dataclass(frozen=True)
class ScoreVector:
    """A multiset of non-negative scores kept in descending order.

    Build instances with :func:`make_score_vector`; the constructor only
    checks the stored representation.
    """

    entries: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        for i, x in enumerate(self.entries):
            if not math.isfinite(x):
                raise NonFiniteScoreError(f"entry {i} is not finite: {x!r}")
            if x < 0:
                raise NegativeScoreError(f"entry {i} is negative: {x!r}")
        for i in range(len(self.entries) - 1):
            if self.entries[i] < self.entries[i + 1]:
                raise ValueError("entries must be sorted in descending order")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[float]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> float:
        return self.entries[i]

    def scaled(self, c: float) -> ScoreVector:
        return make_score_vector(c * x for x in self.entries)

    def with_entry(self, value: float) -> ScoreVector:
        """Return a copy with one more race in which ``value`` was scored."""
        return make_score_vector((*self.entries, value))

    def padded(self, length: int) -> tuple[float, ...]:
        """Entries followed by zeros up to ``length``."""
        return self.entries + (0.0,) * max(0, length - len(self.entries))

    def __add__(self, other: ScoreVector) -> ScoreVector:
        # positionwise on the descending representations, shorter side zero-padded
        n = max(len(self), len(other))
        return make_score_vector(a + b for a, b in zip(self.padded(n), other.padded(n)))


def make_score_vector(raw: Iterable[float]) -> ScoreVector:
    """Validate raw scores and sort them in descending order.

    Raises:
        NonFiniteScoreError: if a score is NaN or infinite.
        NegativeScoreError: if a score is below zero.
    """
    values = sorted(map(float, raw), reverse=True)
    # NaN defeats sorting, so finiteness and sign are checked on every entry
    for x in values:
        if not math.isfinite(x):
            raise NonFiniteScoreError(f"score is not finite: {x!r}")
        if x < 0:
            raise NegativeScoreError(f"score is negative: {x!r}")
    v = object.__new__(ScoreVector)
    object.__setattr__(v, "entries", tuple(values))
    return v


class IndexKind(str, Enum):
    EUCLIDEAN = "euclidean"
    RECTANGLE = "rectangle"
    HINDEX = "hindex"
    SUM = "sum"


def euclidean_index(v: ScoreVector) -> float:
    """Euclidean norm of the score vector."""
    return math.sqrt(math.fsum(x * x for x in v))


def rectangle_index(v: ScoreVector) -> float:
    """Area of the largest rectangle under the descending scores: max of i * v_i."""
    return max((i * x for i, x in enumerate(v, start=1)), default=0.0)


def h_index(v: ScoreVector) -> int:
    """Largest h such that the h-th largest score is at least h."""
    h = 0
    for i, x in enumerate(v, start=1):
        if x < i:
            break
        h = i
    return h


def sum_index(v: ScoreVector) -> float:
    return math.fsum(v)


_RULES = {
    IndexKind.EUCLIDEAN: euclidean_index,
    IndexKind.RECTANGLE: rectangle_index,
    IndexKind.HINDEX: h_index,
    IndexKind.SUM: sum_index,
}


def evaluate(kind: IndexKind | str, v: ScoreVector) -> float:
    return _RULES[IndexKind(kind)](v)


def dominates(x: ScoreVector, y: ScoreVector) -> bool:
    """True iff ``x`` is dominated by ``y``: x_i <= y_i at every position after zero-padding."""
    n = max(len(x), len(y))
    return all(a <= b for a, b in zip(x.padded(n), y.padded(n)))
