"""Resolving sets built by lifting from sub-tournaments.

Every construction here is independent of the scoring system: the output
resolves for all positive weights whenever its base set does.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from ..bracket import (
    Bracket,
    force_winner,
    lift,
    lift_with_partition,
    unique_bracket,
    winners_from_choices,
)
from ..errors import BracketMismatch, EmptyBase, NotInU
from ..tournament import Restriction, Tournament, from_shape_code, restrict
from .bounds import dim_lower_bound


def in_U(T: Tournament, u: int) -> bool:
    """False when ``u``'s parent has exactly two children, the other a player."""
    T.check_vertex(u)
    x = T.parent[u]
    if x is None:
        return True
    kids = T.children[x]
    if len(kids) != 2:
        return True
    other = kids[0] if kids[1] == u else kids[1]
    return not T.is_player(other)


def _outside_player_children(T: Tournament, x: int, u: int) -> List[int]:
    return [c for c in T.children[x] if T.is_player(c) and not T.contains(u, c)]


def partition_size(T: Tournament, u: int) -> int:
    """Sum over matches outside ``T_u`` of half their outside player children."""
    return sum(len(_outside_player_children(T, x, u)) // 2
               for x in T.matches if not T.subset(x, u))


def partition_players(T: Tournament, u: int) -> List[Tuple[int, ...]]:
    """Partition the players outside ``P(u)`` into companion blocks.

    Players sharing a first match are paired off in id order.  A leftover
    player joins the first pair (by smallest member) sitting directly under
    the smallest match below its first match that is not inside ``T_u``.
    """
    if not in_U(T, u):
        raise NotInU(f"vertex {u} is not a valid pivot")
    pairs: List[Tuple[int, int]] = []
    singles: List[int] = []
    for x in T.matches:
        if T.subset(x, u):
            continue
        kids = _outside_player_children(T, x, u)
        for i in range(0, len(kids) - 1, 2):
            pairs.append((kids[i], kids[i + 1]))
        if len(kids) % 2:
            singles.append(kids[-1])
    blocks = [list(p) for p in pairs]
    for a in sorted(singles):
        first = T.parent[a]
        below = [x for x in T.matches if T.subset(x, first) and not T.subset(x, u)]
        x = min(below, key=lambda y: (T.size[y], y))
        kids = set(T.children[x])
        home = min((i for i, p in enumerate(pairs) if p[0] in kids and p[1] in kids),
                   key=lambda i: pairs[i][0])
        blocks[home].append(a)
    return sorted(tuple(sorted(b)) for b in blocks)


def construct_resolving(T: Tournament, u: int, base: Sequence[Bracket],
                        R: Optional[Restriction] = None) -> List[Bracket]:
    """Lift a resolving set of ``T_u`` to one of ``T``.

    Block ``i`` of :func:`partition_players` is lifted on base bracket ``i``
    (the last base bracket once they run out) and contributes one forced
    bracket per member; unused base brackets are lifted as they are.
    """
    if not in_U(T, u):
        raise NotInU(f"vertex {u} is not a valid pivot")
    if not base:
        raise EmptyBase("the base set must contain at least one bracket")
    if R is None:
        R = restrict(T, u)
    for B in base:
        if B.tournament != R.tournament:
            raise BracketMismatch("base bracket does not belong to the restricted tournament")
    blocks = partition_players(T, u)
    out: List[Bracket] = []
    for i, block in enumerate(blocks):
        hat = lift_with_partition(T, u, base[min(i, len(base) - 1)], block, R)
        out.extend(force_winner(hat, a) for a in block)
    for i in range(len(blocks), len(base)):
        out.append(lift(T, u, base[i], R))
    return out


def construct_favorites(T: Tournament, base: Bracket) -> List[Bracket]:
    """``base`` forced in favour of each player in turn, duplicates dropped."""
    out, seen = [], set()
    for a in T.players:
        B = force_winner(base, a)
        if B.winner not in seen:
            seen.add(B.winner)
            out.append(B)
    return out


# -- recursive upper bound ---------------------------------------------------

def _best_pivot(T: Tournament) -> Tuple[int, Optional[int]]:
    n = T.n_players
    if n == 1:
        return 0, None
    if T.n_matches == 1:
        return n - 1, None
    best: Optional[Tuple[int, int]] = None
    for u in range(T.vertex_count):
        # the sink itself only restates dim <= dim
        if u == T.sink or not in_U(T, u):
            continue
        value = n - T.size[u] + max(0, _upper_value(T.shape_code(u)) - partition_size(T, u))
        if best is None or value < best[0]:
            best = (value, u)
    assert best is not None, "a tournament with two matches always has a pivot"
    return best


@lru_cache(maxsize=None)
def _upper_value(code: str) -> int:
    return _best_pivot(from_shape_code(code))[0]


def upper_bound_construction(T: Tournament) -> List[Bracket]:
    """Universal resolving set whose size is the recursive upper bound."""
    _, u = _best_pivot(T)
    if T.n_players == 1:
        return []
    if u is None:
        # single match: name every winner but the last player
        return [Bracket(T, winners_from_choices(T, [i])) for i in range(T.n_players - 1)]
    R = restrict(T, u)
    base = upper_bound_construction(R.tournament) or [unique_bracket(R.tournament)]
    return construct_resolving(T, u, base, R)


@dataclass
class DimBounds:
    lower: int
    upper: int
    construction: List[Bracket] = field(repr=False)
    exact: Optional[int] = None
    exact_witness: Optional[List[Bracket]] = field(default=None, repr=False)

    def to_json_obj(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "construction": [B.to_json_obj() for B in self.construction],
            "exact": self.exact,
            "exact_witness": None if self.exact_witness is None
            else [B.to_json_obj() for B in self.exact_witness],
        }


def dim_upper_bound(T: Tournament) -> DimBounds:
    """Recursive pivot bound, minimised over pivots other than the sink."""
    value, _ = _best_pivot(T)
    lower = dim_lower_bound(T) if T.n_players >= 2 else 0
    return DimBounds(lower, value, upper_bound_construction(T))
