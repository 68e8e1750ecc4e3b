"""Acceptance gate: ten criteria, each printed as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bracketdim.bracket import count_brackets, enumerate_brackets  # noqa: E402
from bracketdim.resolving import (  # noqa: E402
    Universality,
    best_singleton_resolution,
    check_universal,
    decode,
    dim_lower_bound,
    dim_upper_bound,
    estimate_resolution_probability,
    find_resolving_set,
    is_resolving,
    metric_dimension_exact,
    resolving_number_exact,
)
from bracketdim.resolving._table import BracketTable  # noqa: E402
from bracketdim.scoring import (  # noqa: E402
    compute_probabilities,
    constant_scoring,
    distinct_subset_sum_scoring,
    random_scoring,
    score_vector,
)
from bracketdim.tournament import enumerate_shapes, from_nested, standard_tournament  # noqa: E402

from oracles import win_frequencies  # noqa: E402

RESULTS = {}


def ten_random(T):
    return [random_scoring(T, 1000 + s) for s in range(10)]


def corpus(max_players, max_brackets):
    return [T for T in enumerate_shapes(max_players)
            if T.n_players >= 2 and count_brackets(T) <= max_brackets]


def record(number, title, ok, detail, elapsed, budget):
    in_time = elapsed <= budget
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.1f}s/{budget}s"
    if ok and not in_time:
        detail += " (over time budget)"
    line = f"criterion {number:2d} {status}  {title}: {detail} [{timing}]"
    RESULTS[number] = (status == "PASS", line)
    print(line)
    return status == "PASS", line


# -- the criteria ------------------------------------------------------------------------

def criterion_1():
    t0 = time.time()
    small_ok = True
    for n in (2, 4):
        T = standard_tournament(n)
        for sigma in [distinct_subset_sum_scoring(T), constant_scoring(T), *ten_random(T)]:
            small_ok &= metric_dimension_exact(T, sigma)[0] == n // 2
    small_time = time.time() - t0
    T = standard_tournament(8)
    lower = dim_lower_bound(T)
    no_triple = find_resolving_set(T, distinct_subset_sum_scoring(T), 3) is None
    bounds = dim_upper_bound(T)
    construction_ok = len(bounds.construction) == 4 and all(
        is_resolving(T, sigma, bounds.construction).is_resolving
        for sigma in [distinct_subset_sum_scoring(T), constant_scoring(T), *ten_random(T)])
    elapsed = time.time() - t0
    ok = small_ok and small_time < 1 and lower == 4 and no_triple and construction_ok
    detail = (f"n=2,4 exact=n/2 for 12 sigmas: {small_ok} ({small_time:.2f}s); n=8 lower={lower}, "
              f"no 3-set: {no_triple}, size-4 construction resolves: {construction_ok}")
    return record(1, "standard dimension", ok, detail, elapsed, 60)


def criterion_2():
    t0 = time.time()
    parts = []
    ok = True
    for n in (4, 8, 16):
        T = standard_tournament(n)
        members = dim_upper_bound(T).construction
        scored = len(members) == n // 2 and all(
            is_resolving(T, sigma, members).is_resolving for sigma in ten_random(T))
        ok &= scored
        status = "-"
        if n <= 8:
            status = check_universal(T, members).status.value
            ok &= status == Universality.CERTIFIED_UNIVERSAL.value
        parts.append(f"n={n} size={len(members)} scored={scored} universal={status}")
    return record(2, "universality", ok, "; ".join(parts), time.time() - t0, 60)


def criterion_3():
    t0 = time.time()
    shapes = enumerate_shapes(8)
    worst = None
    ok = True
    for T in shapes:
        bounds = dim_upper_bound(T)
        good = bounds.upper <= max(T.n_players - 1, 0) and len(bounds.construction) == bounds.upper
        if T.n_players >= 2:
            good &= is_resolving(T, distinct_subset_sum_scoring(T), bounds.construction).is_resolving
        if not good and worst is None:
            worst = T.shape_code()
        ok &= good
    detail = f"{len(shapes)} shapes, upper <= n-1 and construction resolves under dss" + (
        "" if ok else f"; first failure {worst}")
    return record(3, "general upper bound", ok, detail, time.time() - t0, 300)


def criterion_4():
    t0 = time.time()
    shapes = corpus(7, 64)
    bad = [T.shape_code() for T in shapes
           if metric_dimension_exact(T, distinct_subset_sum_scoring(T))[0] != dim_lower_bound(T)]
    detail = f"{len(shapes)} shapes with <= 64 brackets, exact dss dimension = lower bound"
    if bad:
        detail += f"; mismatches {bad[:5]}"
    return record(4, "lower-bound tightness", not bad, detail, time.time() - t0, 300)


def _res_corpus():
    return corpus(7, 16)


def _res_values():
    out = []
    for T in _res_corpus():
        N = count_brackets(T)
        probs = compute_probabilities(T)
        out.append((T, N, probs, resolving_number_exact(T, distinct_subset_sum_scoring(T))))
    return out


def criterion_5():
    t0 = time.time()
    values = _res_values()
    bad = [T.shape_code() for T, N, p, res in values if res != (1 - p.q_pair) * N + 1]
    # the quarter-bound instance: two players meet, the winner plays a third
    T = from_nested([["a", "b"], "c"])
    N = count_brackets(T)
    res = resolving_number_exact(T, distinct_subset_sum_scoring(T))
    instance = res == 2 == Fraction(N, 4) + 1
    single = resolving_number_exact(from_nested(["a", "b", "c"]),
                                    distinct_subset_sum_scoring(from_nested(["a", "b", "c"]))) == 2
    ok = not bad and instance and single
    detail = (f"{len(values)} shapes with N <= 16 satisfy res = (1-q_pair)N+1: {not bad}; "
              f"((a,b),c): res={res}, N/4+1={Fraction(N, 4) + 1}; single 3-player match res=2: {single}")
    if bad:
        detail += f"; mismatches {bad[:5]}"
    return record(5, "resolving number law", ok, detail, time.time() - t0, 120)


def criterion_6():
    t0 = time.time()
    values = _res_values()
    low_bad = [T.shape_code() for T, N, p, res in values if not (1 - 2 * p.q_max) * N < res]
    up_bad = [(T.shape_code(), res, (1 - p.q_max) * N) for T, N, p, res in values
              if not res <= (1 - p.q_max) * N]
    T = standard_tournament(4)
    res4 = resolving_number_exact(T, distinct_subset_sum_scoring(T))
    p4 = compute_probabilities(T)
    concrete = (1 - 2 * p4.q_max) * 8 == 4 < res4 == 5 <= (1 - p4.q_max) * 8 == 6
    ok = not low_bad and not up_bad and concrete
    detail = (f"lower (1-2q_max)N < res on all {len(values)}: {not low_bad}; "
              f"upper res <= (1-q_max)N violated on {len(up_bad)}; standard 4: 4 < {res4} <= 6: {concrete}")
    if up_bad:
        shape, res, bound = up_bad[0]
        detail += f"; e.g. {shape} res={res} > {bound}"
    return record(6, "resolving number bounds", ok, detail, time.time() - t0, 120)


def criterion_7():
    t0 = time.time()
    values = _res_values()
    bad = [T.shape_code() for T, N, p, res in values if not res > Fraction(N, 4)]
    return record(7, "quarter bound", not bad, f"res > N/4 on all {len(values)} shapes: {not bad}",
                  time.time() - t0, 120)


def criterion_8():
    t0 = time.time()
    shapes = corpus(8, 256)
    mismatch, ratio_bad = [], []
    for T in shapes:
        probs = compute_probabilities(T)
        freq = win_frequencies(T)
        q_max = max(freq.get((T.sink, a), 0) for a in T.players)
        q_pair = min(freq.get((T.meeting_match(a, b), a), 0) + freq.get((T.meeting_match(a, b), b), 0)
                     for a, b in T.player_pairs)
        finals = {a: freq.get((T.sink, a), 0) for a in T.players}
        if (probs.q_max, probs.q_pair, probs.per_player_final) != (q_max, q_pair, finals):
            mismatch.append(T.shape_code())
        if not probs.q_pair <= 2 * probs.q_max:
            ratio_bad.append(T.shape_code())
    ok = not mismatch and not ratio_bad
    detail = (f"{len(shapes)} shapes with <= 256 brackets: closed form = enumeration {not mismatch}, "
              f"q_pair <= 2 q_max {not ratio_bad}")
    return record(8, "probability identities", ok, detail, time.time() - t0, 300)


def criterion_9():
    t0 = time.time()
    T = standard_tournament(8)
    members = dim_upper_bound(T).construction
    table = BracketTable(T)
    ok = True
    count = 0
    for sigma in (distinct_subset_sum_scoring(T), random_scoring(T, 77)):
        for B in enumerate_brackets(T):
            ok &= decode(T, sigma, members, score_vector(sigma, members, B), table=table) == B
            count += 1
    return record(9, "decode round trip", ok, f"{count} decodes over 128 brackets x 2 sigmas exact",
                  time.time() - t0, 10)


def criterion_10():
    t0 = time.time()
    T = standard_tournament(8)
    bound = Fraction(4, 8) - Fraction(4, 64)
    ok = True
    parts = []
    for name, sigma in [("dss", distinct_subset_sum_scoring(T)), ("const", constant_scoring(T)),
                        *[(f"rand{i}", s) for i, s in enumerate(ten_random(T))]]:
        best, B = best_singleton_resolution(T, sigma)
        est = estimate_resolution_probability(T, sigma, [B], 10_000, seed=random.Random(name).getrandbits(32))
        gap = abs(est.estimate - float(best))
        ok &= best <= bound and gap <= 0.02
        parts.append(f"{name}: best={float(best):.4f} mc={est.estimate:.4f}")
    detail = "best singleton <= 0.4375 and |MC - exact| <= 0.02; " + ", ".join(parts[:3]) + ", ..."
    return record(10, "resolution probability bound", ok, detail, time.time() - t0, 120)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(criterion):
    ok, line = criterion()
    assert ok, line


if __name__ == "__main__":
    passed = sum(f()[0] for f in CRITERIA)
    print(f"{passed}/{len(CRITERIA)} criteria passed")
    sys.exit(0 if passed == len(CRITERIA) else 1)
