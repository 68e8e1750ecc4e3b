"""Closed-form bounds on metric dimension and resolving number."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..bracket import count_brackets
from ..errors import TooFewPlayers
from ..scoring import compute_probabilities, format_rational
from ..tournament import Tournament


def dim_lower_bound(T: Tournament) -> int:
    """Max over matches of ``|P(x)|`` minus the largest child player set."""
    if T.n_players < 2:
        raise TooFewPlayers("the lower bound needs at least two players")
    return max(T.size[x] - max(T.size[c] for c in T.children[x]) for x in T.matches)


@dataclass
class ResBounds:
    N: int
    q_max: Fraction
    q_pair: Fraction
    lower_qpair: Fraction  # exclusive
    lower_qmax: Fraction  # exclusive, never stronger than lower_qpair
    upper_qmax: Fraction  # inclusive; fails when final-win odds are uneven
    q_min: Fraction
    upper_qmin: Fraction  # inclusive, always sound
    prediction: Fraction  # exact value for distinct-subset-sum scoring
    exact: Optional[int] = None

    @property
    def quarter(self) -> Fraction:
        return Fraction(self.N, 4)

    def contains(self, value) -> bool:
        """Within the sound interval ``(lower_qpair, upper_qmin]``."""
        return self.lower_qpair < value <= self.upper_qmin

    def within_qmax(self, value) -> bool:
        return self.lower_qpair < value <= self.upper_qmax

    def to_json_obj(self) -> dict:
        return {
            "N": self.N,
            "q_max": format_rational(self.q_max),
            "q_pair": format_rational(self.q_pair),
            "lower_qpair_exclusive": format_rational(self.lower_qpair),
            "lower_qmax_exclusive": format_rational(self.lower_qmax),
            "upper_qmax": format_rational(self.upper_qmax),
            "q_min": format_rational(self.q_min),
            "upper_qmin": format_rational(self.upper_qmin),
            "prediction_distinct_sums": format_rational(self.prediction),
            "exact": self.exact,
        }


def resolving_number_bounds(T: Tournament) -> ResBounds:
    """Exact rational bounds on the resolving number for every scoring system.

    ``upper_qmax`` is ``(1 - q_max) N``.  It holds when every player is
    equally likely to win the final but can fail otherwise, because a
    bracket ending with ``b`` champion is a favourite-forced copy of
    ``1 / Pr[R(z) = b]`` brackets, which is at least ``1 / q_max``.
    Counting with the smallest final-win probability ``q_min`` instead
    bounds every non-resolving set by ``(1 - q_min) N``, so
    ``upper_qmin = (1 - q_min) N + 1`` always holds.
    """
    if T.n_players < 2:
        raise TooFewPlayers("resolving number bounds need at least two players")
    N = count_brackets(T)
    probs = compute_probabilities(T)
    q_min = min(probs.per_player_final.values())
    return ResBounds(
        N=N,
        q_max=probs.q_max,
        q_pair=probs.q_pair,
        lower_qpair=(1 - probs.q_pair) * N,
        lower_qmax=(1 - 2 * probs.q_max) * N,
        upper_qmax=(1 - probs.q_max) * N,
        q_min=q_min,
        upper_qmin=(1 - q_min) * N + 1,
        prediction=(1 - probs.q_pair) * N + 1,
    )
