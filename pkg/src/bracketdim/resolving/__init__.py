"""Resolving sets: verification, bounds, constructions, exact search, decoding."""
from ..scoring import score_vector
from .bounds import ResBounds, dim_lower_bound, resolving_number_bounds
from .construct import (
    DimBounds,
    construct_favorites,
    construct_resolving,
    dim_upper_bound,
    in_U,
    partition_players,
    partition_size,
    upper_bound_construction,
)
from .search import find_resolving_set, metric_dimension_exact, resolving_number_exact
from .verify import (
    ResolutionEstimate,
    ResolvingReport,
    Universality,
    UniversalityReport,
    best_singleton_resolution,
    check_universal,
    decode,
    estimate_resolution_probability,
    is_resolving,
    necessary_condition_violations,
    standard_resolution_bounds,
)

__all__ = [
    "DimBounds", "ResBounds", "ResolutionEstimate", "ResolvingReport", "Universality",
    "UniversalityReport", "best_singleton_resolution", "check_universal", "construct_favorites",
    "construct_resolving", "decode", "dim_lower_bound", "dim_upper_bound",
    "estimate_resolution_probability", "find_resolving_set", "in_U", "is_resolving",
    "metric_dimension_exact", "necessary_condition_violations", "partition_players",
    "partition_size", "resolving_number_bounds", "resolving_number_exact", "score_vector",
    "standard_resolution_bounds", "upper_bound_construction",
]
