"""Bibliometric indices for long-term performance and competitive balance in knockout tournaments."""

from .axioms import (
    Axiom,
    AxiomVerdict,
    check_depth_relevance,
    check_directional_consistency,
    check_independence,
    check_monotonicity,
    check_scale_invariance,
    check_uniform_citation,
    check_uniform_equivalence,
    run_battery,
)
from .balance import (
    TOP_FIVE,
    BalanceSeries,
    Clubs,
    Countries,
    RankedList,
    ShareTable,
    TwoGroups,
    Window,
    WithinCountry,
    balance_series,
    club_vector,
    country_vector,
    entity_vectors,
    full_window,
    group_vector,
    hhi,
    rank_entities,
    rolling_windows,
    share_series,
    shares,
)
from .data import (
    PRESETS,
    Dataset,
    ParticipationRecord,
    Stage,
    WeightScheme,
    embedded_dataset,
    parse_dataset,
    parse_scheme,
    preset_scheme,
    serialize_dataset,
    validate_dataset,
    weight_of,
)
from .indices import (
    IndexKind,
    ScoreVector,
    dominates,
    euclidean_index,
    evaluate,
    h_index,
    make_score_vector,
    rectangle_index,
    sum_index,
)

__version__ = "0.1.0"
