"""All brackets of a tournament plus vectorised score and agreement rows."""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..bracket import Bracket, iter_winners
from ..errors import TournamentMismatch
from ..scoring import ScoringSystem
from ..tournament import Tournament

_INT64_SAFE = 1 << 62


class BracketTable:
    """Brackets of ``T`` in enumeration order, indexed by winner tuple."""

    def __init__(self, T: Tournament, cap: Optional[int] = None):
        self.tournament = T
        self.winners: List[Tuple[int, ...]] = list(iter_winners(T, cap))
        self.index: Dict[Tuple[int, ...], int] = {w: i for i, w in enumerate(self.winners)}
        cols = list(T.matches)
        # match columns only: players agree in every pair of brackets
        self._grid = np.array([[w[x] for x in cols] for w in self.winners], dtype=np.int64).reshape(
            len(self.winners), len(cols))

    def __len__(self):
        return len(self.winners)

    def bracket(self, i: int) -> Bracket:
        return Bracket(self.tournament, self.winners[i])

    def position(self, B: Bracket) -> int:
        if B.tournament != self.tournament:
            raise TournamentMismatch("bracket belongs to another tournament")
        return self.index[B.winner]

    def agreement(self, member: Sequence[int]) -> np.ndarray:
        """Boolean ``N x |M|`` matrix: bracket j agrees with ``member`` on match i."""
        ref = np.array([member[x] for x in self.tournament.matches], dtype=np.int64)
        return self._grid == ref

    def score_row(self, sigma: ScoringSystem, member: Sequence[int]) -> np.ndarray:
        """Scaled integer scores of ``member`` against every bracket."""
        if sigma.tournament != self.tournament:
            raise TournamentMismatch("scoring system belongs to another tournament")
        agree = self.agreement(member)
        weights = sigma.integer_weights
        if sum(weights) < _INT64_SAFE:
            return agree @ np.array(weights, dtype=np.int64)
        return agree.astype(object) @ np.array(weights, dtype=object)

    def score_rows(self, sigma: ScoringSystem, members: Sequence[Sequence[int]]) -> np.ndarray:
        rows = [self.score_row(sigma, m) for m in members]
        if not rows:
            return np.zeros((0, len(self)), dtype=np.int64)
        return np.vstack(rows)

    def full_score_matrix(self, sigma: ScoringSystem) -> np.ndarray:
        """``S[i, j]`` = scaled score of bracket i against bracket j."""
        return self.score_rows(sigma, self.winners)

    def agreement_masks(self, member: Sequence[int]) -> List[int]:
        """Per bracket, bitmask over match positions where it agrees with ``member``."""
        agree = self.agreement(member)
        m = agree.shape[1]
        if m <= 62:
            bits = np.left_shift(np.int64(1), np.arange(m, dtype=np.int64))
            return [int(v) for v in agree @ bits]
        return [sum(1 << i for i in np.flatnonzero(row)) for row in agree]


def pair_coverage(T: Tournament, winners: Sequence[int]) -> int:
    """Bitmask over ``T.player_pairs``: bit p set when the bracket sends one
    of the pair through their meeting match."""
    mask = 0
    for p, (a, b) in enumerate(T.player_pairs):
        w = winners[T.meeting_table[(a, b)]]
        if w == a or w == b:
            mask |= 1 << p
    return mask
