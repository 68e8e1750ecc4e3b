"""Single-elimination tournaments as validated anti-arborescences.

A tournament is stored as a parent array over dense integer vertex ids.
Players are the sources, matches are every other vertex, and the sink is
the final.  Player sets are kept as integer bitmasks indexed by vertex id,
so ``P(u) <= P(v)`` is ``mask[u] & ~mask[v] == 0``.
"""
from __future__ import annotations

import json
import random
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import (
    BadVertex,
    CycleDetected,
    DisconnectedVertex,
    DuplicateEdge,
    LimitExceeded,
    MultipleOutEdges,
    MultipleSinks,
    NoSink,
    NotAPlayer,
    NotPowerOfTwo,
    ParseError,
    SamePlayer,
    UnaryInNeighbor,
)

MAX_SHAPE_PLAYERS = 12
LEAF_CODE = "."


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Tournament:
    """An immutable single-elimination tournament.

    Build one with :func:`validate`, :func:`parse` or one of the generators
    rather than calling the constructor with hand-made arrays; the
    constructor does check every structural property, but it expects the
    parent array to already be free of out-degree violations.
    """

    def __init__(self, parent: Sequence[Optional[int]], labels: Optional[Sequence[str]] = None):
        n = len(parent)
        if n == 0:
            raise NoSink("a tournament needs at least one vertex")
        parent = tuple(parent)
        for v, p in enumerate(parent):
            if p is not None and not 0 <= p < n:
                raise BadVertex(f"parent of {v} is out of range: {p}")
        if labels is None:
            labels = tuple(str(v) for v in range(n))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise BadVertex("one label per vertex is required")
            if len(set(labels)) != n:
                raise BadVertex("vertex labels must be unique")

        sinks = [v for v in range(n) if parent[v] is None]
        if not sinks:
            raise NoSink("every vertex has an out-neighbor")
        if len(sinks) > 1:
            raise MultipleSinks(f"sinks: {sinks}")
        sink = sinks[0]

        # 0 = unseen, 1 = on current walk, 2 = reaches sink
        state = [0] * n
        state[sink] = 2
        for start in range(n):
            walk = []
            v = start
            while state[v] == 0:
                state[v] = 1
                walk.append(v)
                v = parent[v]
                if v is None:
                    break
            if v is not None and state[v] == 1:
                raise CycleDetected(f"cycle through vertex {v}")
            if v is None:
                raise DisconnectedVertex(f"vertex {start} does not reach the sink")
            for w in walk:
                state[w] = 2

        children: List[List[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if p is not None:
                children[p].append(v)
        for v in range(n):
            if len(children[v]) == 1:
                raise UnaryInNeighbor(v)

        self.vertex_count = n
        self.parent = parent
        self.labels = labels
        self.children: Tuple[Tuple[int, ...], ...] = tuple(tuple(c) for c in children)
        self.sink = sink
        self.players: Tuple[int, ...] = tuple(v for v in range(n) if not children[v])
        self.matches: Tuple[int, ...] = tuple(v for v in range(n) if children[v])

        # children-before-parent order, children visited in id order
        post: List[int] = []
        stack = [(sink, False)]
        while stack:
            v, done = stack.pop()
            if done:
                post.append(v)
                continue
            stack.append((v, True))
            for c in reversed(self.children[v]):
                stack.append((c, False))
        self.postorder: Tuple[int, ...] = tuple(post)

        mask = [0] * n
        for v in post:
            if self.children[v]:
                m = 0
                for c in self.children[v]:
                    m |= mask[c]
                mask[v] = m
            else:
                mask[v] = 1 << v
        self.player_mask: Tuple[int, ...] = tuple(mask)
        self.size: Tuple[int, ...] = tuple(bin(m).count("1") for m in mask)

    # -- basic queries -----------------------------------------------------

    @property
    def n_players(self) -> int:
        return len(self.players)

    @property
    def n_matches(self) -> int:
        return len(self.matches)

    def is_player(self, v: int) -> bool:
        return 0 <= v < self.vertex_count and not self.children[v]

    def check_vertex(self, v) -> int:
        if not isinstance(v, int) or not 0 <= v < self.vertex_count:
            raise BadVertex(f"no vertex {v!r}")
        return v

    def check_player(self, a) -> int:
        if not isinstance(a, int) or not self.is_player(a):
            raise NotAPlayer(f"{a!r} is not a player")
        return a

    def player_set(self, v: int) -> Tuple[int, ...]:
        """Sorted players with a directed walk to ``v``."""
        self.check_vertex(v)
        return tuple(_bits(self.player_mask[v]))

    def contains(self, v: int, a: int) -> bool:
        """True when player ``a`` lies in ``P(v)``."""
        return bool(self.player_mask[v] >> a & 1)

    def subset(self, u: int, v: int) -> bool:
        """True when ``P(u)`` is a subset of ``P(v)``."""
        return self.player_mask[u] & ~self.player_mask[v] == 0

    def ancestors(self, v: int) -> List[int]:
        """``v`` followed by each vertex on its walk to the sink."""
        out = []
        while v is not None:
            out.append(v)
            v = self.parent[v]
        return out

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise BadVertex(f"no vertex labelled {label!r}") from None

    @cached_property
    def _label_index(self) -> Dict[str, int]:
        return {s: v for v, s in enumerate(self.labels)}

    @cached_property
    def match_index(self) -> Dict[int, int]:
        """Position of each match in ``matches``."""
        return {x: i for i, x in enumerate(self.matches)}

    @cached_property
    def fill_order(self) -> Tuple[int, ...]:
        """Matches with every match child listed before its parent."""
        return tuple(v for v in self.postorder if self.children[v])

    def meeting_match(self, a: int, b: int) -> int:
        """The unique match where players ``a`` and ``b`` can meet."""
        self.check_player(a)
        self.check_player(b)
        if a == b:
            raise SamePlayer(f"players must differ, got {a} twice")
        return self.meeting_table[(a, b) if a < b else (b, a)]

    @cached_property
    def player_pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(combinations(self.players, 2))

    @cached_property
    def meeting_table(self) -> Dict[Tuple[int, int], int]:
        table = {}
        for x in self.matches:
            kids = self.children[x]
            for i, u in enumerate(kids):
                for w in kids[i + 1:]:
                    for a in _bits(self.player_mask[u]):
                        for b in _bits(self.player_mask[w]):
                            table[(a, b) if a < b else (b, a)] = x
        return table

    def shape_code(self, v: Optional[int] = None) -> str:
        """Canonical isomorphism key of the subtree rooted at ``v``."""
        return self._shape_codes[self.sink if v is None else self.check_vertex(v)]

    @cached_property
    def _shape_codes(self) -> Tuple[str, ...]:
        codes = [""] * self.vertex_count
        for v in self.postorder:
            if self.children[v]:
                codes[v] = "(" + "".join(sorted(codes[c] for c in self.children[v])) + ")"
            else:
                codes[v] = LEAF_CODE
        return tuple(codes)

    def is_standard(self) -> bool:
        n = self.n_players
        if n < 2 or n & (n - 1):
            return False
        return self.shape_code() == _complete_binary_code(n)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Tournament):
            return NotImplemented
        return self is other or (self.parent == other.parent and self.labels == other.labels)

    def __hash__(self):
        return hash((self.parent, self.labels))

    def __repr__(self):
        return f"Tournament(players={self.n_players}, matches={self.n_matches}, shape={self.shape_code()})"


class Restriction(NamedTuple):
    """A restricted tournament plus the id maps back to its parent."""

    tournament: Tournament
    old_ids: Tuple[int, ...]
    new_ids: Dict[int, int]


def validate(vertex_count: int, edges: Iterable[Tuple[int, int]],
             labels: Optional[Sequence[str]] = None) -> Tournament:
    """Build a tournament from a vertex count and ``(child, parent)`` edges."""
    if vertex_count < 1:
        raise NoSink("a tournament needs at least one vertex")
    parent: List[Optional[int]] = [None] * vertex_count
    seen = set()
    for u, v in edges:
        for w in (u, v):
            if not isinstance(w, int) or not 0 <= w < vertex_count:
                raise BadVertex(f"edge endpoint {w!r} out of range")
        if (u, v) in seen:
            raise DuplicateEdge(f"edge {u}->{v} given twice")
        seen.add((u, v))
        if parent[u] is not None:
            raise MultipleOutEdges(f"vertex {u} has more than one out-neighbor")
        parent[u] = v
    return Tournament(parent, labels)


def player_set(T: Tournament, v: int) -> Tuple[int, ...]:
    return T.player_set(v)


def meeting_match(T: Tournament, a: int, b: int) -> int:
    return T.meeting_match(a, b)


def restrict(T: Tournament, u: int) -> Restriction:
    """Keep exactly the vertices whose player set lies inside ``P(u)``."""
    T.check_vertex(u)
    mask = T.player_mask[u]
    old_ids = tuple(v for v in range(T.vertex_count) if T.player_mask[v] & ~mask == 0)
    new_ids = {old: new for new, old in enumerate(old_ids)}
    parent = [None if old == u else new_ids[T.parent[old]] for old in old_ids]
    sub = Tournament(parent, [T.labels[old] for old in old_ids])
    return Restriction(sub, old_ids, new_ids)


# -- generators ---------------------------------------------------------------

def standard_tournament(n: int) -> Tournament:
    """Complete binary tournament on ``n`` players.

    Players are 0..n-1 left to right; matches follow round by round from
    the first round to the final, left to right within a round.
    """
    if not isinstance(n, int) or n < 2 or n & (n - 1):
        raise NotPowerOfTwo(f"standard tournaments need n >= 2 a power of two, got {n!r}")
    parent: List[Optional[int]] = [None] * (2 * n - 1)
    level = list(range(n))
    next_id = n
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level), 2):
            parent[level[i]] = next_id
            parent[level[i + 1]] = next_id
            nxt.append(next_id)
            next_id += 1
        level = nxt
    return Tournament(parent)


def _complete_binary_code(n: int) -> str:
    code = LEAF_CODE
    while n > 1:
        code = "(" + code + code + ")"
        n //= 2
    return code


def from_nested(tree) -> Tournament:
    """Build a tournament from nested lists; any non-list item is a player.

    Players are numbered left to right from 0, matches follow in post-order.
    """
    n_players = 0
    n_matches = 0

    def count(node):
        nonlocal n_players, n_matches
        if isinstance(node, (list, tuple)):
            if len(node) < 2:
                raise UnaryInNeighbor(None, "every match needs at least two children")
            n_matches += 1
            for c in node:
                count(c)
        else:
            n_players += 1

    count(tree)
    parent: List[Optional[int]] = [None] * (n_players + n_matches)
    next_player = 0
    next_match = n_players

    def build(node) -> int:
        nonlocal next_player, next_match
        if not isinstance(node, (list, tuple)):
            v = next_player
            next_player += 1
            return v
        kids = [build(c) for c in node]
        v = next_match
        next_match += 1
        for c in kids:
            parent[c] = v
        return v

    build(tree)
    return Tournament(parent)


def _code_to_nested(code: str):
    stack: List[list] = [[]]
    for ch in code:
        if ch == "(":
            stack.append([])
        elif ch == ")":
            node = stack.pop()
            stack[-1].append(node)
        elif ch == LEAF_CODE:
            stack[-1].append(0)
        else:
            raise ParseError(f"bad shape code character {ch!r}")
    (root,) = stack[0]
    return root


def from_shape_code(code: str) -> Tournament:
    """Tournament for a canonical shape code, numbered as in :func:`from_nested`."""
    return from_nested(_code_to_nested(code))


def shapes_with_players(n: int) -> List[str]:
    """Canonical codes of every tournament shape with exactly ``n`` players."""
    return list(_shape_table(n)[n])


def _shape_table(limit: int) -> List[List[str]]:
    table: List[List[str]] = [[], [LEAF_CODE]]
    for n in range(2, limit + 1):
        items = [(size, code) for size in range(1, n) for code in table[size]]
        found = set()

        def extend(start, remaining, chosen):
            if remaining == 0:
                if len(chosen) >= 2:
                    found.add("(" + "".join(sorted(chosen)) + ")")
                return
            for i in range(start, len(items)):
                size, code = items[i]
                if size > remaining:
                    continue
                chosen.append(code)
                extend(i, remaining - size, chosen)
                chosen.pop()

        extend(0, n, [])
        table.append(sorted(found))
    return table


def enumerate_shapes(max_players: int) -> List[Tournament]:
    """One tournament per isomorphism class with at most ``max_players`` players."""
    if not isinstance(max_players, int) or not 1 <= max_players <= MAX_SHAPE_PLAYERS:
        raise LimitExceeded(f"max_players must be in 1..{MAX_SHAPE_PLAYERS}, got {max_players!r}")
    table = _shape_table(max_players)
    out = []
    for n in range(1, max_players + 1):
        for code in table[n]:
            out.append(from_shape_code(code))
    return out


def random_tournament(n_players: int, seed: int) -> Tournament:
    """Random tournament on ``n_players`` players, reproducible per seed.

    Each group of ``m >= 2`` players is split into ``k`` consecutive
    nonempty parts with ``k`` uniform on ``2..m`` and the cut points a
    uniform ``(k-1)``-subset of the ``m-1`` gaps.
    """
    if not isinstance(n_players, int) or n_players < 1:
        raise BadVertex(f"n_players must be a positive integer, got {n_players!r}")
    rng = random.Random(seed)

    def split(m):
        if m == 1:
            return 0
        k = rng.randint(2, m)
        cuts = sorted(rng.sample(range(1, m), k - 1))
        bounds = [0] + cuts + [m]
        return [split(bounds[i + 1] - bounds[i]) for i in range(k)]

    return from_nested(split(n_players))


# -- JSON ---------------------------------------------------------------------

def to_json_obj(T: Tournament):
    """Nested JSON value with the sink at the root."""
    def node(v):
        if not T.children[v]:
            return T.labels[v]
        return {"id": T.labels[v], "children": [node(c) for c in T.children[v]]}
    return node(T.sink)


def serialize(T: Tournament) -> str:
    return json.dumps(to_json_obj(T), separators=(",", ":"))


def label_sort_key(label: str):
    """Integer-looking labels first in numeric order, then the rest."""
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


def from_json_obj(doc) -> Tournament:
    labels: List[str] = []
    edges: List[Tuple[int, int]] = []
    index: Dict[str, int] = {}

    def add(label):
        if not isinstance(label, str):
            raise ParseError(f"vertex ids must be strings, got {label!r}")
        if label in index:
            raise ParseError(f"duplicate vertex id {label!r}")
        index[label] = len(labels)
        labels.append(label)
        return index[label]

    stack = [(doc, None)]
    while stack:
        node, up = stack.pop()
        if isinstance(node, dict):
            if set(node) != {"id", "children"}:
                raise ParseError(f"match objects need exactly 'id' and 'children', got {sorted(node)}")
            kids = node["children"]
            if not isinstance(kids, list) or not kids:
                raise ParseError(f"match {node.get('id')!r} needs a nonempty children list")
            v = add(node["id"])
            for c in reversed(kids):
                stack.append((c, v))
        else:
            v = add(node)
        if up is not None:
            edges.append((v, up))

    order = sorted(range(len(labels)), key=lambda i: label_sort_key(labels[i]))
    renum = {old: new for new, old in enumerate(order)}
    return validate(len(labels), [(renum[u], renum[v]) for u, v in edges],
                    [labels[old] for old in order])


def parse(text: str) -> Tournament:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_json_obj(doc)
