"""Checking, certifying and decoding with a fixed set of brackets."""
from __future__ import annotations

import enum
import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..bracket import Bracket, count_brackets, sample_uniform
from ..errors import Ambiguous, LimitExceeded, NoMatch, TournamentMismatch
from ..scoring import ScoringSystem, format_rational, to_rational
from ..tournament import Tournament
from ._table import BracketTable

SCORE_TABLE_CAP = 1024
DEFAULT_PAIR_CAP = 1 << 24
DEFAULT_SIGN_MEMBERS = 10  # 3**10 sign vectors per undecided pair


def _check_members(T: Tournament, members: Sequence[Bracket], sigma: Optional[ScoringSystem] = None):
    if sigma is not None and sigma.tournament != T:
        raise TournamentMismatch("scoring system belongs to another tournament")
    for B in members:
        if B.tournament != T:
            raise TournamentMismatch("set member belongs to another tournament")


@dataclass
class ResolvingReport:
    is_resolving: bool
    witness_pair: Optional[Tuple[Bracket, Bracket]] = None
    score_table: Optional[List[Tuple[Fraction, ...]]] = field(default=None, repr=False)

    def to_json_obj(self) -> dict:
        out = {"is_resolving": self.is_resolving,
               "witness_pair": None if self.witness_pair is None
               else [B.to_json_obj() for B in self.witness_pair]}
        if self.score_table is not None:
            out["score_table"] = [[format_rational(q) for q in row] for row in self.score_table]
        return out


def first_collision(columns: Sequence[tuple]) -> Optional[Tuple[int, int]]:
    """Lexicographically smallest ``(i, j)``, ``i < j``, with equal columns."""
    first: Dict[tuple, int] = {}
    second: Dict[tuple, int] = {}
    for j, col in enumerate(columns):
        if col not in first:
            first[col] = j
        elif col not in second:
            second[col] = j
    if not second:
        return None
    return min((first[c], j) for c, j in second.items())


def _columns(rows: np.ndarray) -> List[tuple]:
    if rows.shape[0] == 0:
        return [()] * rows.shape[1]
    return [tuple(int(v) for v in col) for col in rows.T]


def is_resolving(T: Tournament, sigma: ScoringSystem, members: Sequence[Bracket],
                 cap: Optional[int] = None, with_table: bool = False,
                 table: Optional[BracketTable] = None) -> ResolvingReport:
    """Compare every bracket's score vector against ``members``."""
    _check_members(T, members, sigma)
    if table is None:
        table = BracketTable(T, cap)
    rows = table.score_rows(sigma, [B.winner for B in members])
    cols = _columns(rows)
    hit = first_collision(cols)
    scores = None
    if with_table and len(table) <= SCORE_TABLE_CAP:
        scores = [tuple(Fraction(v, sigma.scale) for v in col) for col in cols]
    if hit is None:
        return ResolvingReport(True, None, scores)
    return ResolvingReport(False, (table.bracket(hit[0]), table.bracket(hit[1])), scores)


def necessary_condition_violations(T: Tournament, members: Sequence[Bracket]) -> List[Tuple[int, int]]:
    """Player pairs that no member sends through their meeting match.

    Any such pair makes the set non-resolving for every scoring system.
    """
    _check_members(T, members)
    out = []
    for a, b in T.player_pairs:
        x = T.meeting_table[(a, b)]
        if not any(B.winner[x] == a or B.winner[x] == b for B in members):
            out.append((a, b))
    return out


class Universality(enum.Enum):
    CERTIFIED_UNIVERSAL = "CERTIFIED_UNIVERSAL"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"


class UniversalityReport(NamedTuple):
    status: Universality
    pair: Optional[Tuple[Bracket, Bracket]] = None  # refuting or undecided pair


def _sign_vectors(k: int) -> np.ndarray:
    ys = [y for y in itertools.product((-1, 0, 1), repeat=k) if any(y)]
    return np.array(ys, dtype=np.int64).reshape(len(ys), k)


def _separated_by_signs(diff: np.ndarray, signs: np.ndarray) -> bool:
    """Some signed sum of the members' difference rows is nonnegative and nonzero.

    Such a sum pairs strictly positively with every positive weight vector,
    so the score differences cannot all vanish.
    """
    combo = signs @ diff
    return bool(np.any(np.all(combo >= 0, axis=1) & np.any(combo > 0, axis=1)))


def check_universal(T: Tournament, members: Sequence[Bracket], cap: Optional[int] = None,
                    pair_cap: int = DEFAULT_PAIR_CAP,
                    sign_cap: int = DEFAULT_SIGN_MEMBERS) -> UniversalityReport:
    """Decide whether ``members`` resolves for every positive scoring system.

    A pair of brackets is separated for every scoring system when, for some
    member, its agreement set with one bracket strictly contains its
    agreement set with the other.  Pairs that fail this test get a second
    chance: a signed combination (coefficients in -1, 0, 1) of the members'
    agreement differences that is nonnegative and nonzero also rules out a
    common score vector.  This second test runs only for at most
    ``sign_cap`` members.  A pair with identical agreement sets against
    every member is never separated; anything else is inconclusive.
    """
    _check_members(T, members)
    N = count_brackets(T)
    if N * (N - 1) // 2 > pair_cap:
        raise LimitExceeded(f"{N} brackets give more than {pair_cap} pairs")
    table = BracketTable(T, cap)
    masks = np.array([table.agreement_masks(B.winner) for B in members], dtype=object).reshape(len(members), N)
    cols = [tuple(masks[:, j]) for j in range(N)]
    hit = first_collision(cols)
    if hit is not None:
        return UniversalityReport(Universality.REFUTED, (table.bracket(hit[0]), table.bracket(hit[1])))
    agree = None
    signs = None
    for j in range(N):
        a = cols[j]
        for jj in range(j + 1, N):
            b = cols[jj]
            if any(ma != mb and (ma & ~mb == 0 or mb & ~ma == 0) for ma, mb in zip(a, b)):
                continue
            if len(members) > sign_cap:
                return UniversalityReport(Universality.INCONCLUSIVE, (table.bracket(j), table.bracket(jj)))
            if agree is None:
                agree = np.stack([table.agreement(B.winner) for B in members]).astype(np.int64)
                signs = _sign_vectors(len(members))
            if not _separated_by_signs(agree[:, j, :] - agree[:, jj, :], signs):
                return UniversalityReport(Universality.INCONCLUSIVE, (table.bracket(j), table.bracket(jj)))
    return UniversalityReport(Universality.CERTIFIED_UNIVERSAL)


def decode(T: Tournament, sigma: ScoringSystem, members: Sequence[Bracket], scores: Sequence,
           cap: Optional[int] = None, table: Optional[BracketTable] = None) -> Bracket:
    """The bracket whose scores against ``members`` are ``scores``.

    Raises :class:`NoMatch` when no bracket fits and :class:`Ambiguous`
    (carrying every candidate) when more than one does.
    """
    _check_members(T, members, sigma)
    if len(scores) != len(members):
        raise ValueError(f"{len(scores)} scores for {len(members)} brackets")
    target = []
    for q in scores:
        scaled = to_rational(q) * sigma.scale
        if scaled.denominator != 1:
            raise NoMatch("score is not a sum of match weights")
        target.append(int(scaled))
    if table is None:
        table = BracketTable(T, cap)
    rows = table.score_rows(sigma, [B.winner for B in members])
    if rows.shape[0]:
        hits = np.flatnonzero(np.all(rows == np.array(target, dtype=rows.dtype)[:, None], axis=0))
    else:
        hits = np.arange(len(table))
    if len(hits) == 0:
        raise NoMatch("no bracket has these scores")
    if len(hits) > 1:
        raise Ambiguous([table.bracket(int(j)) for j in hits])
    return table.bracket(int(hits[0]))


# -- resolving a random bracket ---------------------------------------------

def resolved_mask(T: Tournament, sigma: ScoringSystem, members: Sequence[Bracket],
                  table: BracketTable) -> List[bool]:
    """Per bracket: no other bracket shares its score vector."""
    cols = _columns(table.score_rows(sigma, [B.winner for B in members]))
    counts = Counter(cols)
    return [counts[c] == 1 for c in cols]


@dataclass
class ResolutionEstimate:
    estimate: float
    interval: Tuple[float, float]  # 95% normal approximation
    samples: int
    exact: Fraction
    pair_bound: Optional[Fraction] = None  # standard tournaments only
    constant_sigma_bound: Optional[Fraction] = None  # standard, constant scoring

    def to_json_obj(self) -> dict:
        return {
            "estimate": self.estimate,
            "interval": list(self.interval),
            "samples": self.samples,
            "exact": format_rational(self.exact),
            "pair_bound": None if self.pair_bound is None else format_rational(self.pair_bound),
            "constant_sigma_bound": None if self.constant_sigma_bound is None
            else format_rational(self.constant_sigma_bound),
        }


def standard_resolution_bounds(n: int, t: int) -> Tuple[Fraction, Fraction]:
    """Upper bounds on the best ``t``-set probability for standard ``n``.

    The first holds for every scoring system; the second for the
    constant scoring system only.
    """
    pair = Fraction(1) if 2 * t >= n else 1 - (1 - Fraction(2 * t, n)) ** 2
    constant = min(Fraction(1), Fraction(n ** t * 2, 2 ** n))
    return pair, constant


def estimate_resolution_probability(T: Tournament, sigma: ScoringSystem, members: Sequence[Bracket],
                                    samples: int, seed, cap: Optional[int] = None) -> ResolutionEstimate:
    """Monte Carlo fraction of uniform random brackets that ``members`` resolves."""
    _check_members(T, members, sigma)
    if samples < 1:
        raise ValueError("need at least one sample")
    table = BracketTable(T, cap)
    resolved = resolved_mask(T, sigma, members, table)
    rng = random.Random(seed)
    hits = sum(resolved[table.index[sample_uniform(T, rng).winner]] for _ in range(samples))
    p = hits / samples
    half = 1.96 * math.sqrt(p * (1 - p) / samples)
    est = ResolutionEstimate(p, (max(0.0, p - half), min(1.0, p + half)), samples,
                             Fraction(sum(resolved), len(table)))
    if T.is_standard():
        est.pair_bound, est.constant_sigma_bound = standard_resolution_bounds(T.n_players, len(members))
    return est


def best_singleton_resolution(T: Tournament, sigma: ScoringSystem,
                              cap: Optional[int] = None) -> Tuple[Fraction, Bracket]:
    """Exhaustive best single bracket: exact resolved fraction and the bracket."""
    table = BracketTable(T, cap)
    best, best_j = Fraction(-1), 0
    for j, w in enumerate(table.winners):
        row = [int(v) for v in table.score_row(sigma, w)]
        counts = Counter(row)
        frac = Fraction(sum(1 for v in row if counts[v] == 1), len(table))
        if frac > best:
            best, best_j = frac, j
    return best, table.bracket(best_j)
