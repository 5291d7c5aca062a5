"""Executable versions of the seven properties used to compare aggregation indices.

Each ``check_*`` function evaluates one instance of a property and returns an
:class:`AxiomVerdict`. :func:`run_battery` throws many random small-integer
instances at every index and tallies the violations, which is how the
Euclidean/rectangle comparison table is reproduced empirically.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from .indices import (
    IndexKind,
    ScoreVector,
    dominates,
    euclidean_index,
    evaluate,
    make_score_vector,
)

TOL = 1e-9


class NonPositiveScaleError(ValueError):
    pass


class InvalidSplitError(ValueError):
    pass


class Axiom(str, Enum):
    MONOTONICITY = "monotonicity"
    INDEPENDENCE = "independence"
    DEPTH_RELEVANCE = "depth relevance"
    SCALE_INVARIANCE = "scale invariance"
    DIRECTIONAL_CONSISTENCY = "directional consistency"
    UNIFORM_CITATION = "uniform citation"
    UNIFORM_EQUIVALENCE = "uniform equivalence"


# True = the index satisfies the property.
EXPECTED_PATTERN = {
    IndexKind.EUCLIDEAN: {
        Axiom.MONOTONICITY: True,
        Axiom.INDEPENDENCE: True,
        Axiom.DEPTH_RELEVANCE: True,
        Axiom.SCALE_INVARIANCE: True,
        Axiom.DIRECTIONAL_CONSISTENCY: True,
        Axiom.UNIFORM_CITATION: False,
        Axiom.UNIFORM_EQUIVALENCE: False,
    },
    IndexKind.RECTANGLE: {
        Axiom.MONOTONICITY: True,
        Axiom.INDEPENDENCE: False,
        Axiom.DEPTH_RELEVANCE: False,
        Axiom.SCALE_INVARIANCE: True,
        Axiom.DIRECTIONAL_CONSISTENCY: False,
        Axiom.UNIFORM_CITATION: True,
        Axiom.UNIFORM_EQUIVALENCE: True,
    },
}


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of one property check.

    ``witness`` holds the inputs (under ``"inputs"``) and the index values
    that decided the verdict. It is always present for a violation.
    """

    satisfied: bool
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.satisfied


def _sign(a: float, b: float) -> int:
    if abs(a - b) <= TOL:
        return 0
    return 1 if a > b else -1


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= TOL


def _vec(v: ScoreVector) -> list[float]:
    return list(v.entries)


def check_scale_invariance(kind: IndexKind, x: ScoreVector, y: ScoreVector, c: float) -> AxiomVerdict:
    if not c > 0:
        raise NonPositiveScaleError(f"scale factor must be positive, got {c!r}")
    fx, fy = evaluate(kind, x), evaluate(kind, y)
    fcx, fcy = evaluate(kind, x.scaled(c)), evaluate(kind, y.scaled(c))
    witness = {
        "inputs": {"kind": kind, "x": _vec(x), "y": _vec(y), "c": c},
        "f(x)": fx, "f(y)": fy, "f(cx)": fcx, "f(cy)": fcy,
    }
    return AxiomVerdict(_sign(fx, fy) == _sign(fcx, fcy), witness)


def check_monotonicity(kind: IndexKind, x: ScoreVector, y: ScoreVector) -> AxiomVerdict:
    """Check f(x) <= f(y) when x is dominated by y; vacuous otherwise."""
    if not dominates(x, y):
        return AxiomVerdict(True)
    fx, fy = evaluate(kind, x), evaluate(kind, y)
    witness = {"inputs": {"kind": kind, "x": _vec(x), "y": _vec(y)}, "f(x)": fx, "f(y)": fy}
    return AxiomVerdict(fx <= fy + TOL, witness)


def check_independence(kind: IndexKind, x: ScoreVector, y: ScoreVector, c: float) -> AxiomVerdict:
    """Add a race where both competitors score ``c``; the ordering must not change."""
    fx, fy = evaluate(kind, x), evaluate(kind, y)
    fx2, fy2 = evaluate(kind, x.with_entry(c)), evaluate(kind, y.with_entry(c))
    witness = {
        "inputs": {"kind": kind, "x": _vec(x), "y": _vec(y), "c": c},
        "f(x)": fx, "f(y)": fy, "f(x')": fx2, "f(y')": fy2,
    }
    return AxiomVerdict(_sign(fx, fy) == _sign(fx2, fy2), witness)


def split_entry(x: ScoreVector, i: int, a: float) -> ScoreVector:
    """Move ``a`` points out of the ``i``-th race (1-based) into a new race."""
    if not 1 <= i <= len(x):
        raise InvalidSplitError(f"position {i} outside 1..{len(x)}")
    xi = x[i - 1]
    if not 0 < a < xi:
        raise InvalidSplitError(f"split amount {a!r} must lie strictly inside (0, {xi!r})")
    parts = list(x.entries)
    parts[i - 1] = xi - a
    parts.append(a)
    return make_score_vector(parts)


def check_depth_relevance(kind: IndexKind, x: ScoreVector, i: int, a: float) -> AxiomVerdict:
    split = split_entry(x, i, a)
    fx, fs = evaluate(kind, x), evaluate(kind, split)
    witness = {"inputs": {"kind": kind, "x": _vec(x), "i": i, "a": a}, "x'": _vec(split), "f(x)": fx, "f(x')": fs}
    return AxiomVerdict(fs < fx - TOL, witness)


def check_directional_consistency(
    kind: IndexKind, x: ScoreVector, y: ScoreVector, d: ScoreVector, lam: float
) -> AxiomVerdict:
    """Tied before and after adding ``d`` implies tied after adding ``lam * d``.

    Vacuously satisfied when the two premises do not hold.
    """
    if not lam > 1:
        raise ValueError(f"growth multiplier must exceed 1, got {lam!r}")
    fx, fy = evaluate(kind, x), evaluate(kind, y)
    fxd, fyd = evaluate(kind, x + d), evaluate(kind, y + d)
    if not (_close(fx, fy) and _close(fxd, fyd)):
        return AxiomVerdict(True)
    scaled = d.scaled(lam)
    fxl, fyl = evaluate(kind, x + scaled), evaluate(kind, y + scaled)
    witness = {
        "inputs": {"kind": kind, "x": _vec(x), "y": _vec(y), "d": _vec(d), "lam": lam},
        "f(x)": fx, "f(y)": fy, "f(x+d)": fxd, "f(y+d)": fyd,
        "f(x+lam d)": fxl, "f(y+lam d)": fyl,
    }
    return AxiomVerdict(_close(fxl, fyl), witness)


def check_uniform_citation(kind: IndexKind, n: int, v: float) -> AxiomVerdict:
    if n < 1:
        raise ValueError("a uniform vector needs at least one race")
    u = make_score_vector([v] * n)
    fu = evaluate(kind, u)
    witness = {"inputs": {"kind": kind, "n": n, "v": v}, "f(u)": fu, "n*v": n * v}
    return AxiomVerdict(_close(fu, n * v), witness)


def check_uniform_equivalence(kind: IndexKind, x: ScoreVector) -> AxiomVerdict:
    """Search for a uniform vector dominated by ``x`` with the same index value.

    For a monotone index the largest candidate of each length k is
    ``[x_k] * k``, so checking those k candidates is exhaustive.
    """
    fx = evaluate(kind, x)
    if len(x) == 0:
        return AxiomVerdict(True, {"inputs": {"kind": kind, "x": []}, "f(x)": fx, "u": []})
    tried = {}
    for k in range(1, len(x) + 1):
        u = make_score_vector([x[k - 1]] * k)
        fu = evaluate(kind, u)
        tried[k] = fu
        if _close(fu, fx) and dominates(u, x):
            return AxiomVerdict(True, {"inputs": {"kind": kind, "x": _vec(x)}, "f(x)": fx, "u": _vec(u)})
    return AxiomVerdict(False, {"inputs": {"kind": kind, "x": _vec(x)}, "f(x)": fx, "f(u_k)": tried})


def replay(axiom: Axiom, witness: dict[str, Any]) -> AxiomVerdict:
    """Re-run a check from the inputs recorded in a witness."""
    args = dict(witness["inputs"])
    kind = IndexKind(args.pop("kind"))
    vecs = {k: make_score_vector(v) for k, v in args.items() if isinstance(v, list)}
    args.update(vecs)
    fn = {
        Axiom.MONOTONICITY: check_monotonicity,
        Axiom.INDEPENDENCE: check_independence,
        Axiom.DEPTH_RELEVANCE: check_depth_relevance,
        Axiom.SCALE_INVARIANCE: check_scale_invariance,
        Axiom.DIRECTIONAL_CONSISTENCY: check_directional_consistency,
        Axiom.UNIFORM_CITATION: check_uniform_citation,
        Axiom.UNIFORM_EQUIVALENCE: check_uniform_equivalence,
    }[axiom]
    return fn(kind, **args)


# Counterexamples worked through by hand for the rectangle index.
FIXTURES = {
    "independence": dict(x=[5, 1], y=[3, 3], c=5),
    "depth relevance": dict(x=[5, 2], i=1, a=2),
    "directional consistency": dict(x=[3, 3, 0], y=[2, 2, 2], d=[1, 0, 0], lam=4),
}


def fixture_verdicts(kind: IndexKind) -> dict[Axiom, AxiomVerdict]:
    ind = FIXTURES["independence"]
    dep = FIXTURES["depth relevance"]
    dc = FIXTURES["directional consistency"]
    mk = make_score_vector
    return {
        Axiom.INDEPENDENCE: check_independence(kind, mk(ind["x"]), mk(ind["y"]), ind["c"]),
        Axiom.DEPTH_RELEVANCE: check_depth_relevance(kind, mk(dep["x"]), dep["i"], dep["a"]),
        Axiom.DIRECTIONAL_CONSISTENCY: check_directional_consistency(
            kind, mk(dc["x"]), mk(dc["y"]), mk(dc["d"]), dc["lam"]
        ),
    }


@dataclass
class BatteryResult:
    trials: int
    seed: int
    checked: dict[IndexKind, dict[Axiom, int]] = field(default_factory=dict)
    violations: dict[IndexKind, dict[Axiom, int]] = field(default_factory=dict)
    witnesses: dict[IndexKind, dict[Axiom, dict[str, Any]]] = field(default_factory=dict)

    def violated(self, kind: IndexKind, axiom: Axiom) -> bool:
        return self.violations[kind][axiom] > 0


def _rand_vector(rng: random.Random, max_len: int = 5, max_score: int = 6) -> ScoreVector:
    rand = rng.random
    return make_score_vector([int(rand() * (max_score + 1)) for _ in range(1 + int(rand() * max_len))])


def _same_scores(x: ScoreVector, y: ScoreVector) -> bool:
    n = max(len(x), len(y))
    return x.padded(n) == y.padded(n)


def _tied_triple(kind: IndexKind, pool):
    """First (x, y, d) in the pool with f(x) = f(y) and f(x+d) = f(y+d), x and y distinct."""
    for x, y, d in pool:
        if _same_scores(x, y):
            continue
        if _close(evaluate(kind, x), evaluate(kind, y)) and _close(evaluate(kind, x + d), evaluate(kind, y + d)):
            return x, y, d
    return None


def run_battery(
    trials: int = 10_000,
    seed: int = 0,
    kinds: tuple[IndexKind, ...] = tuple(IndexKind),
) -> BatteryResult:
    """Evaluate every property on ``trials`` random instances per index.

    Scores are small integers; scale factors and split amounts are small
    rationals so that genuine ties stay ties in floating point. Seeded, so
    the tallies are reproducible.
    """
    rng = random.Random(seed)
    result = BatteryResult(trials=trials, seed=seed)
    for kind in kinds:
        result.checked[kind] = {a: 0 for a in Axiom}
        result.violations[kind] = {a: 0 for a in Axiom}
        result.witnesses[kind] = {}

    def record(kind: IndexKind, axiom: Axiom, verdict: AxiomVerdict, vacuous: bool = False) -> None:
        if not vacuous:
            result.checked[kind][axiom] += 1
        if not verdict.satisfied:
            result.violations[kind][axiom] += 1
            result.witnesses[kind].setdefault(axiom, verdict.witness)

    for _ in range(trials):
        x, y = _rand_vector(rng), _rand_vector(rng)
        bump = make_score_vector(
            a + rng.randint(0, 3) for a in x.padded(len(x) + rng.randint(0, 2))
        )
        c_new = rng.randint(0, 6)
        scale = float(Fraction(rng.randint(1, 40), rng.randint(1, 8)))
        n_uniform, v_uniform = rng.randint(1, 6), float(Fraction(rng.randint(0, 24), rng.randint(1, 4)))
        splittable = [i for i, s in enumerate(x, start=1) if s >= 2]
        if splittable:
            i = rng.choice(splittable)
            a = float(Fraction(rng.randint(1, 2 * int(x[i - 1]) - 1), 2))
        lam = float(Fraction(rng.randint(5, 40), 4))
        pool = [(_rand_vector(rng, 4, 4), _rand_vector(rng, 4, 4), _rand_vector(rng, 3, 3)) for _ in range(12)]
        for kind in kinds:
            record(kind, Axiom.MONOTONICITY, check_monotonicity(kind, x, bump))
            record(kind, Axiom.INDEPENDENCE, check_independence(kind, x, y, c_new))
            record(kind, Axiom.SCALE_INVARIANCE, check_scale_invariance(kind, x, y, scale))
            if splittable:
                record(kind, Axiom.DEPTH_RELEVANCE, check_depth_relevance(kind, x, i, a))
            tied = _tied_triple(kind, pool)
            if tied is not None:
                record(kind, Axiom.DIRECTIONAL_CONSISTENCY, check_directional_consistency(kind, *tied, lam))
            record(kind, Axiom.UNIFORM_CITATION, check_uniform_citation(kind, n_uniform, v_uniform))
            record(kind, Axiom.UNIFORM_EQUIVALENCE, check_uniform_equivalence(kind, y))
    return result


def property_matrix(result: BatteryResult) -> dict[IndexKind, dict[Axiom, bool]]:
    """Satisfied/violated per (index, property), combining battery and fixtures."""
    matrix = {}
    for kind in result.violations:
        fixtures = fixture_verdicts(kind)
        matrix[kind] = {
            axiom: not (result.violated(kind, axiom) or (axiom in fixtures and not fixtures[axiom].satisfied))
            for axiom in Axiom
        }
    return matrix


def matches_expected_pattern(matrix: dict[IndexKind, dict[Axiom, bool]]) -> bool:
    return all(matrix[kind] == expected for kind, expected in EXPECTED_PATTERN.items())


def sqrt_n_repair_holds(n: int, v: float) -> bool:
    """Euclidean index times sqrt(n) recovers n * v on a uniform vector."""
    return _close(math.sqrt(n) * euclidean_index(make_score_vector([v] * n)), n * v)
