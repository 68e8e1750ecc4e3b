"""Exact metric dimension and resolving number by exhaustive search."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..bracket import Bracket
from ..errors import LimitExceeded, TournamentMismatch
from ..limits import DEFAULT_SEARCH_CAP, DEFAULT_SUBSET_CAP
from ..scoring import ScoringSystem
from ..tournament import Tournament
from ._table import BracketTable, pair_coverage
from .bounds import dim_lower_bound

RESNUM_PAIR_CAP = 4096  # the pair method holds an N x N score matrix


class _Search:
    """Shared state for the combination scan at one tournament and scoring."""

    def __init__(self, T: Tournament, sigma: ScoringSystem, cap: Optional[int]):
        if sigma.tournament != T:
            raise TournamentMismatch("scoring system belongs to another tournament")
        self.table = BracketTable(T, cap)
        N = len(self.table)
        self.N = N
        self.full = (1 << len(T.player_pairs)) - 1
        self.cover = [pair_coverage(T, w) for w in self.table.winners]
        # suffix_or[i]: pairs any bracket from i onward can still cover
        self.suffix_or = [0] * (N + 1)
        for i in range(N - 1, -1, -1):
            self.suffix_or[i] = self.suffix_or[i + 1] | self.cover[i]
        self.max_cover = max((bin(c).count("1") for c in self.cover), default=0)
        scores = self.table.full_score_matrix(sigma)
        # rows compressed to small labels so refinement stays in int64
        self.labels = []
        self.widths = []
        for row in scores:
            values, inv = np.unique(np.asarray(row), return_inverse=True)
            self.labels.append(inv.astype(np.int64))
            self.widths.append(len(values))

    def refine(self, classes: np.ndarray, i: int) -> Tuple[np.ndarray, int]:
        keys = classes * self.widths[i] + self.labels[i]
        _, inv = np.unique(keys, return_inverse=True)
        return inv.astype(np.int64), int(inv.max()) + 1 if len(inv) else 0

    def scan(self, k: int, firsts: Sequence[int], effort_cap: int) -> Tuple[Optional[Tuple[int, ...]], int]:
        """First resolving ``k``-combination (lex order) whose head is in ``firsts``."""
        N, full, cover, suffix_or = self.N, self.full, self.cover, self.suffix_or
        effort = 0
        start = np.zeros(N, dtype=np.int64)
        chosen: List[int] = []

        def dfs(lo: int, covered: int, classes: np.ndarray, n_classes: int) -> bool:
            nonlocal effort
            left = k - len(chosen)
            if left == 0:
                return n_classes == N
            missing = full & ~covered
            if bin(missing).count("1") > left * self.max_cover:
                return False
            for i in range(lo, N - left + 1):
                if covered | suffix_or[i] != full:
                    break
                effort += 1
                if effort > effort_cap:
                    raise LimitExceeded(f"search exceeded {effort_cap} steps")
                nxt, m = self.refine(classes, i)
                chosen.append(i)
                if dfs(i + 1, covered | cover[i], nxt, m):
                    return True
                chosen.pop()
            return False

        for first in firsts:
            if first > N - k:
                break
            if suffix_or[first] != full:
                break
            effort += 1
            classes, m = self.refine(start, first)
            chosen[:] = [first]
            if dfs(first + 1, cover[first], classes, m):
                return tuple(chosen), effort
        return None, effort


def _scan_worker(args):
    T, sigma, cap, k, firsts, effort_cap = args
    return _Search(T, sigma, cap).scan(k, firsts, effort_cap)


def _find(search: _Search, T, sigma, cap, k: int, search_cap: int, workers: int) -> Optional[Tuple[int, ...]]:
    N = search.N
    if k == 0:
        return () if N == 1 else None
    if k > N:
        return None
    if workers <= 1 or N - k + 1 < 2:
        hit, _ = search.scan(k, range(N - k + 1), search_cap)
        return hit
    # interleaved heads balance the load; the smallest hit by head wins
    heads = [list(range(w, N - k + 1, workers)) for w in range(workers)]
    jobs = [(T, sigma, cap, k, h, search_cap) for h in heads if h]
    with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
        hits = [hit for hit, _ in pool.map(_scan_worker, jobs) if hit is not None]
    return min(hits) if hits else None


def _workers(workers: Optional[int]) -> int:
    if workers is None:
        return 1
    if workers <= 0:
        return os.cpu_count() or 1
    return workers


def find_resolving_set(T: Tournament, sigma: ScoringSystem, k: int, cap: Optional[int] = None,
                       search_cap: int = DEFAULT_SEARCH_CAP,
                       workers: Optional[int] = None) -> Optional[List[Bracket]]:
    """Lexicographically first resolving ``k``-set of enumerated brackets, or None.

    Branches whose members cannot cover every player pair at its meeting
    match are cut before any scoring, since such sets never resolve.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    search = _Search(T, sigma, cap)
    hit = _find(search, T, sigma, cap, k, search_cap, _workers(workers))
    return None if hit is None else [search.table.bracket(i) for i in hit]


def metric_dimension_exact(T: Tournament, sigma: ScoringSystem, cap: Optional[int] = None,
                           search_cap: int = DEFAULT_SEARCH_CAP,
                           workers: Optional[int] = None) -> Tuple[int, List[Bracket]]:
    """Smallest resolving set size, searched upward from the lower bound."""
    search = _Search(T, sigma, cap)
    if search.N == 1:
        return 0, []
    w = _workers(workers)
    for k in range(dim_lower_bound(T), search.N + 1):
        hit = _find(search, T, sigma, cap, k, search_cap, w)
        if hit is not None:
            return k, [search.table.bracket(i) for i in hit]
    raise AssertionError("the full bracket set always resolves")


def _resnum_pairs(scores: np.ndarray) -> int:
    N = scores.shape[0]
    worst = 0
    for j in range(N):
        same = (scores == scores[:, [j]]).sum(axis=0)
        same[j] = 0
        worst = max(worst, int(same.max()))
    return worst + 1


def _resnum_subsets(scores: np.ndarray) -> int:
    N = scores.shape[0]
    for size in range(N, -1, -1):
        for members in itertools.combinations(range(N), size):
            cols = scores[list(members)].T
            if len({tuple(c) for c in cols}) < N:
                return size + 1
    return 0


def resolving_number_exact(T: Tournament, sigma: ScoringSystem, method: str = "pairs",
                           cap: Optional[int] = None, subset_cap: int = DEFAULT_SUBSET_CAP) -> int:
    """Smallest ``r`` such that every ``r``-set of brackets resolves.

    ``method="pairs"`` uses that the largest non-resolving set is the set of
    brackets scoring equally against some fixed pair.  ``method="subsets"``
    scans subsets from the largest down and is limited to ``subset_cap``
    brackets.
    """
    if sigma.tournament != T:
        raise TournamentMismatch("scoring system belongs to another tournament")
    table = BracketTable(T, cap)
    N = len(table)
    if N == 1:
        return 0
    if method == "pairs":
        if N > RESNUM_PAIR_CAP:
            raise LimitExceeded(f"{N} brackets exceed the pair-method cap {RESNUM_PAIR_CAP}")
        return _resnum_pairs(table.full_score_matrix(sigma))
    if method == "subsets":
        if N > subset_cap:
            raise LimitExceeded(f"{N} brackets exceed the subset-scan cap {subset_cap}")
        return _resnum_subsets(table.full_score_matrix(sigma))
    raise ValueError(f"unknown method {method!r}")
