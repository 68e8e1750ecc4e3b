"""Brackets: winner assignments consistent with a tournament."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    BracketError,
    BracketMismatch,
    ChainViolation,
    CompanionPropertyViolated,
    FixedPointViolation,
    LimitExceeded,
)
from .limits import bracket_cap
from .tournament import Restriction, Tournament, restrict


@dataclass(frozen=True)
class Bracket:
    tournament: Tournament
    winner: Tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.winner[v]

    def to_json_obj(self) -> dict:
        labels = self.tournament.labels
        return {labels[v]: labels[w] for v, w in enumerate(self.winner)}

    def __repr__(self):
        T = self.tournament
        picks = ", ".join(f"{T.labels[x]}:{T.labels[self.winner[x]]}" for x in T.matches)
        return f"Bracket({picks})"


def validate_bracket(T: Tournament, winner: Union[Mapping[int, int], Sequence[int]]) -> Bracket:
    if isinstance(winner, Mapping):
        missing = [v for v in range(T.vertex_count) if v not in winner]
        if missing:
            raise BracketError(f"winner map misses vertices {missing}")
        winner = [winner[v] for v in range(T.vertex_count)]
    winner = tuple(winner)
    if len(winner) != T.vertex_count:
        raise BracketError(f"expected {T.vertex_count} entries, got {len(winner)}")
    for a in T.players:
        if winner[a] != a:
            raise FixedPointViolation(a)
    for x in T.matches:
        if winner[x] not in {winner[c] for c in T.children[x]}:
            raise ChainViolation(x)
    return Bracket(T, winner)


def bracket_from_json(T: Tournament, doc: Mapping[str, str]) -> Bracket:
    if not isinstance(doc, Mapping):
        raise BracketError("a bracket must be a JSON object")
    extra = set(doc) - set(T.labels)
    if extra:
        raise BracketError(f"unknown vertex ids {sorted(extra)}")
    return validate_bracket(T, {T.index_of(k): T.index_of(v) for k, v in doc.items()})


def count_brackets(T: Tournament) -> int:
    return prod(len(T.children[x]) for x in T.matches)


def winners_from_choices(T: Tournament, choices: Sequence[int]) -> Tuple[int, ...]:
    """Winner tuple where match ``T.matches[i]`` goes to child ``choices[i]``."""
    w = list(range(T.vertex_count))
    idx = T.match_index
    for x in T.fill_order:
        w[x] = w[T.children[x][choices[idx[x]]]]
    return tuple(w)


def iter_winners(T: Tournament, cap: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Winner tuples in the same order as :func:`enumerate_brackets`."""
    cap = bracket_cap(cap)
    total = count_brackets(T)
    if total > cap:
        raise LimitExceeded(f"{total} brackets exceed the cap of {cap}")
    radices = [range(len(T.children[x])) for x in T.matches]
    for choices in product(*radices):
        yield winners_from_choices(T, choices)


def enumerate_brackets(T: Tournament, cap: Optional[int] = None) -> Iterator[Bracket]:
    """Every bracket once, mixed radix over matches in id order.

    The first match is the most significant digit and a digit is the index
    of the winning child in ``T.children[x]``.
    """
    for w in iter_winners(T, cap):
        yield Bracket(T, w)


def sample_uniform(T: Tournament, rng: Union[int, random.Random, None] = None) -> Bracket:
    """Uniformly random bracket via an independent child pick per match."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    choices = [rng.randrange(len(T.children[x])) for x in T.matches]
    return Bracket(T, winners_from_choices(T, choices))


def unique_bracket(T: Tournament) -> Bracket:
    """The bracket of a match-free (single player) tournament."""
    if T.matches:
        raise BracketError("tournament has more than one bracket")
    return Bracket(T, tuple(range(T.vertex_count)))


def force_winner(B: Bracket, a: int) -> Bracket:
    """Copy of ``B`` where ``a`` wins every match it can reach."""
    T = B.tournament
    T.check_player(a)
    w = list(B.winner)
    for v in T.ancestors(a):
        w[v] = a
    return Bracket(T, tuple(w))


def restrict_bracket(B: Bracket, R: Restriction) -> Bracket:
    """Restriction of ``B`` to the sub-tournament described by ``R``."""
    return Bracket(R.tournament, tuple(R.new_ids[B.winner[old]] for old in R.old_ids))


def lift(T: Tournament, u: int, sub_bracket: Bracket, R: Optional[Restriction] = None) -> Bracket:
    """Extend a bracket of ``T_u`` to ``T`` keeping ``P(u)`` out of later matches.

    Matches outside ``T_u`` are filled smallest player set first, each taking
    the winner of its smallest-id child whose player set misses ``P(u)``.
    """
    T.check_vertex(u)
    if R is None:
        R = restrict(T, u)
    if sub_bracket.tournament != R.tournament:
        raise BracketMismatch("bracket does not belong to the restricted tournament")
    inside = T.player_mask[u]
    w: List[Optional[int]] = list(range(T.vertex_count))
    for new, old in enumerate(R.old_ids):
        w[old] = R.old_ids[sub_bracket.winner[new]]
    kept = set(R.old_ids)
    outside = sorted((x for x in T.matches if x not in kept), key=lambda x: (T.size[x], x))
    for x in outside:
        for c in T.children[x]:
            if T.player_mask[c] & inside == 0:
                w[x] = w[c]
                break
    return Bracket(T, tuple(w))


def check_companions(T: Tournament, u: int, block: Iterable[int]) -> List[int]:
    """Sorted block after checking it against ``P(u)`` and the companion rule.

    Every ``a`` in the block needs some other ``b`` in the block lying in
    every match ``a`` can reach, which is the same as ``b`` in ``P`` of
    ``a``'s first match.
    """
    block = sorted(set(block))
    for a in block:
        T.check_player(a)
        if T.contains(u, a):
            raise BracketError(f"player {a} lies inside P({u})")
    for a in block:
        first = T.parent[a]
        if first is None or not any(b != a and T.contains(first, b) for b in block):
            raise CompanionPropertyViolated(a)
    return block


def lift_with_partition(T: Tournament, u: int, sub_bracket: Bracket, block: Iterable[int],
                        R: Optional[Restriction] = None) -> Bracket:
    """:func:`lift`, then force each block member to win, ascending id."""
    block = check_companions(T, u, block)
    B = lift(T, u, sub_bracket, R)
    for a in block:
        B = force_winner(B, a)
    return B
