"""Single-elimination tournaments, brackets, scoring systems and resolving sets."""
from .bracket import (
    Bracket,
    bracket_from_json,
    count_brackets,
    enumerate_brackets,
    force_winner,
    lift,
    lift_with_partition,
    restrict_bracket,
    sample_uniform,
    unique_bracket,
    validate_bracket,
)
from .errors import BracketDimError, LimitExceeded
from .scoring import (
    ScoringSystem,
    WinProbabilities,
    compute_probabilities,
    constant_scoring,
    distinct_subset_sum_scoring,
    random_scoring,
    score,
    scoring_from_json,
    scoring_from_mapping,
    win_probability,
)
from .tournament import (
    Restriction,
    Tournament,
    enumerate_shapes,
    from_nested,
    meeting_match,
    parse,
    player_set,
    random_tournament,
    restrict,
    serialize,
    standard_tournament,
    validate,
)

__version__ = "0.1.0"
