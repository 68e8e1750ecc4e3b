"""Exact scoring systems, bracket scores and uniform win probabilities.

Every weight and probability is a :class:`fractions.Fraction`; nothing in
here uses floating point, since resolving-set membership is decided by
exact score equality.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from numbers import Rational
from typing import Dict, List, Mapping, Optional, Tuple

from .bracket import Bracket, count_brackets, iter_winners
from .errors import (
    LimitExceeded,
    PlayerNotInMatch,
    ScoringError,
    TooFewPlayers,
    TournamentMismatch,
)
from .tournament import Tournament

MAX_SUBSET_SUM_MATCHES = 20
RANDOM_WEIGHT_RANGE = (1, 1000)


def to_rational(value) -> Fraction:
    """Exact rational from an int, Fraction, ``"p/q"`` or decimal string."""
    if isinstance(value, bool):
        raise ScoringError(f"not a number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ScoringError(f"not an exact rational: {value!r}") from None
    raise ScoringError(f"weights must be integers or strings, got {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ScoringSystem:
    tournament: Tournament
    weights: Tuple[Fraction, ...]  # aligned with tournament.matches
    distinct_subset_sums: Optional[bool] = None

    def __post_init__(self):
        if len(self.weights) != self.tournament.n_matches:
            raise ScoringError("one weight per match is required")
        for x, w in zip(self.tournament.matches, self.weights):
            if not w > 0:
                raise ScoringError(f"weight of match {self.tournament.labels[x]} must be positive, got {w}")

    def weight(self, x: int) -> Fraction:
        return self.weights[self.tournament.match_index[x]]

    @cached_property
    def scale(self) -> int:
        return lcm(*(w.denominator for w in self.weights)) if self.weights else 1

    @cached_property
    def integer_weights(self) -> Tuple[int, ...]:
        """Weights times ``scale``; preserves every comparison of sums."""
        return tuple(int(w * self.scale) for w in self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def to_json_obj(self) -> Dict[str, str]:
        labels = self.tournament.labels
        return {labels[x]: format_rational(w) for x, w in zip(self.tournament.matches, self.weights)}


def scoring_from_mapping(T: Tournament, weights: Mapping[int, object]) -> ScoringSystem:
    extra = [x for x in weights if x not in T.match_index]
    if extra:
        raise ScoringError(f"not matches: {extra}")
    missing = [x for x in T.matches if x not in weights]
    if missing:
        raise ScoringError(f"no weight for matches {missing}")
    return ScoringSystem(T, tuple(to_rational(weights[x]) for x in T.matches))


def scoring_from_json(T: Tournament, doc: Mapping[str, object]) -> ScoringSystem:
    if not isinstance(doc, Mapping):
        raise ScoringError("a scoring system must be a JSON object")
    return scoring_from_mapping(T, {T.index_of(k): v for k, v in doc.items()})


def distinct_subset_sum_scoring(T: Tournament) -> ScoringSystem:
    """Weight ``2**i`` on the i-th match in id order."""
    return ScoringSystem(T, tuple(Fraction(1 << i) for i in range(T.n_matches)), True)


def constant_scoring(T: Tournament, value=1) -> ScoringSystem:
    # equal weights collide as soon as there are two matches
    return ScoringSystem(T, tuple(to_rational(value) for _ in T.matches), T.n_matches < 2)


def random_scoring(T: Tournament, seed) -> ScoringSystem:
    """Uniform integer weights in ``RANDOM_WEIGHT_RANGE``, seed-controlled."""
    rng = random.Random(seed)
    lo, hi = RANDOM_WEIGHT_RANGE
    return ScoringSystem(T, tuple(Fraction(rng.randint(lo, hi)) for _ in T.matches))


def _same_tournament(*objs):
    first = objs[0].tournament
    for o in objs[1:]:
        if o.tournament != first:
            raise TournamentMismatch("objects belong to different tournaments")


def score(sigma: ScoringSystem, B: Bracket, B2: Bracket) -> Fraction:
    """Total weight of the matches on which the two brackets agree."""
    _same_tournament(sigma, B, B2)
    total = Fraction(0)
    for x, w in zip(sigma.tournament.matches, sigma.weights):
        if B.winner[x] == B2.winner[x]:
            total += w
    return total


def integer_score(sigma: ScoringSystem, w1: Tuple[int, ...], w2: Tuple[int, ...]) -> int:
    """``score * sigma.scale`` on raw winner tuples; no checks."""
    s = 0
    for x, wt in zip(sigma.tournament.matches, sigma.integer_weights):
        if w1[x] == w2[x]:
            s += wt
    return s


def verify_distinct_subset_sums(sigma: ScoringSystem) -> bool:
    """Brute force over all ``2**|M|`` subset sums."""
    m = len(sigma.weights)
    if m > MAX_SUBSET_SUM_MATCHES:
        raise LimitExceeded(f"{m} matches exceed the subset-sum cap of {MAX_SUBSET_SUM_MATCHES}")
    sums = [0]
    for w in sigma.integer_weights:
        sums = sums + [s + w for s in sums]
    return len(set(sums)) == len(sums)


def has_distinct_subset_sums(sigma: ScoringSystem) -> bool:
    if sigma.distinct_subset_sums is not None:
        return sigma.distinct_subset_sums
    return verify_distinct_subset_sums(sigma)


# -- probabilities under a uniform random bracket ---------------------------

def win_probability(T: Tournament, a: int, x: int) -> Fraction:
    """Probability that player ``a`` wins vertex ``x`` in a uniform bracket."""
    T.check_player(a)
    T.check_vertex(x)
    if not T.contains(x, a):
        raise PlayerNotInMatch(f"player {a} cannot reach vertex {x}")
    denom = 1
    v = a
    while v != x:
        v = T.parent[v]
        denom *= len(T.children[v])
    return Fraction(1, denom)


@dataclass(frozen=True)
class WinProbabilities:
    q_max: Fraction
    q_pair: Fraction
    per_player_final: Dict[int, Fraction]
    pair: Tuple[int, int]  # first pair attaining q_pair

    def to_json_obj(self, T: Tournament) -> dict:
        return {
            "q_max": format_rational(self.q_max),
            "q_pair": format_rational(self.q_pair),
            "pair": [T.labels[self.pair[0]], T.labels[self.pair[1]]],
            "final": {T.labels[a]: format_rational(p) for a, p in sorted(self.per_player_final.items())},
        }


def _probabilities_closed_form(T: Tournament):
    final = {a: win_probability(T, a, T.sink) for a in T.players}
    pair_probs = {}
    for a, b in T.player_pairs:
        x = T.meeting_match(a, b)
        pair_probs[(a, b)] = win_probability(T, a, x) + win_probability(T, b, x)
    return final, pair_probs


def _probabilities_exhaustive(T: Tournament, cap: Optional[int]):
    N = count_brackets(T)
    finals: Counter = Counter()
    pairs: Counter = Counter()
    meet = [(a, b, T.meeting_match(a, b)) for a, b in T.player_pairs]
    for w in iter_winners(T, cap):
        finals[w[T.sink]] += 1
        for a, b, x in meet:
            if w[x] == a or w[x] == b:
                pairs[(a, b)] += 1
    final = {a: Fraction(finals[a], N) for a in T.players}
    pair_probs = {(a, b): Fraction(pairs[(a, b)], N) for a, b, _ in meet}
    return final, pair_probs


def compute_probabilities(T: Tournament, exhaustive: bool = False,
                          cap: Optional[int] = None) -> WinProbabilities:
    """Exact ``q_max``, ``q_pair`` and final-win probabilities.

    ``exhaustive=True`` counts over every bracket instead of using the path
    products, as an independent cross-check.
    """
    if T.n_players < 2:
        raise TooFewPlayers("q_pair needs at least two players")
    if exhaustive:
        final, pair_probs = _probabilities_exhaustive(T, cap)
    else:
        final, pair_probs = _probabilities_closed_form(T)
    q_pair = min(pair_probs.values())
    pair = next(p for p in T.player_pairs if pair_probs[p] == q_pair)
    return WinProbabilities(max(final.values()), q_pair, final, pair)


def score_vector(sigma: ScoringSystem, brackets: List[Bracket], B: Bracket) -> Tuple[Fraction, ...]:
    return tuple(score(sigma, Bi, B) for Bi in brackets)

