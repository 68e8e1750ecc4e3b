import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bracketdim.bracket import (
    Bracket,
    bracket_from_json,
    check_companions,
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
from bracketdim.errors import (
    BracketMismatch,
    ChainViolation,
    CompanionPropertyViolated,
    FixedPointViolation,
    LimitExceeded,
    NotAPlayer,
)
from bracketdim.resolving.construct import in_U, partition_players
from bracketdim.tournament import enumerate_shapes, from_nested, random_tournament, restrict, standard_tournament

from conftest import B1_DOC
from oracles import all_winner_maps, as_tuple

tournaments = st.builds(random_tournament, st.integers(1, 7), st.integers(0, 10_000))
SHAPES_6 = enumerate_shapes(6)


def is_valid(B):
    T = B.tournament
    w = B.winner
    return (all(w[a] == a for a in T.players)
            and all(w[x] in {w[c] for c in T.children[x]} for x in T.matches))


# -- validation -----------------------------------------------------------------

def test_figure_b1_valid(figure, figure_brackets):
    B1, _ = figure_brackets
    assert is_valid(B1)
    assert B1.to_json_obj() == B1_DOC


def test_fixed_point_violation(figure):
    doc = dict(B1_DOC, a="b")
    with pytest.raises(FixedPointViolation) as info:
        bracket_from_json(figure, doc)
    assert figure.labels[info.value.player] == "a"


def test_chain_violation(figure):
    doc = dict(B1_DOC, z="d")
    with pytest.raises(ChainViolation) as info:
        bracket_from_json(figure, doc)
    assert figure.labels[info.value.match] == "z"


def test_validate_accepts_sequence(figure, figure_brackets):
    B1, _ = figure_brackets
    assert validate_bracket(figure, list(B1.winner)) == B1


# -- counting and enumeration --------------------------------------------------------

@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_count_standard(n):
    assert count_brackets(standard_tournament(n)) == 2 ** (n - 1)


def test_count_small_examples(figure):
    assert count_brackets(from_nested(["a", "b", "c"])) == 3
    assert count_brackets(figure) == 8


@pytest.mark.parametrize("T", SHAPES_6, ids=lambda T: T.shape_code())
def test_enumeration_matches_recursive_oracle(T):
    got = [B.winner for B in enumerate_brackets(T)]
    assert len(got) == count_brackets(T) == len(set(got))
    assert set(got) == {as_tuple(T, w) for w in all_winner_maps(T)}
    assert all(is_valid(Bracket(T, w)) for w in got)


def test_enumeration_order(figure):
    got = list(enumerate_brackets(figure))
    first = got[0]
    assert all(first[x] == first[figure.children[x][0]] for x in figure.matches)
    # the last match (the sink) is the least significant digit
    assert got[1][figure.sink] == got[1][figure.children[figure.sink][1]]
    assert got[1][figure.index_of("x")] == got[0][figure.index_of("x")]


def test_enumeration_cap():
    with pytest.raises(LimitExceeded):
        list(enumerate_brackets(standard_tournament(8), cap=100))


# -- sampling ---------------------------------------------------------------------

def test_sample_uniform_frequencies(figure):
    rng = random.Random(2024)
    counts = Counter(sample_uniform(figure, rng).winner for _ in range(80_000))
    assert len(counts) == 8
    for c in counts.values():
        assert abs(c / 80_000 - 0.125) < 0.01


def test_sample_uniform_edge_cases():
    T = from_nested("a")
    assert sample_uniform(T, 1) == unique_bracket(T)
    S = standard_tournament(8)
    assert sample_uniform(S, 5) == sample_uniform(S, 5)


# -- forcing a winner ---------------------------------------------------------------

def test_force_winner_examples(figure, figure_brackets):
    B1, B2 = figure_brackets
    a = figure.index_of("a")
    assert force_winner(B2, a) == B1
    assert force_winner(B1, a) == B1
    with pytest.raises(NotAPlayer):
        force_winner(B1, figure.sink)


def test_force_winner_idempotent_on_figure(figure):
    for B in enumerate_brackets(figure):
        for a in figure.players:
            Ba = force_winner(B, a)
            assert force_winner(Ba, a) == Ba
            assert is_valid(Ba)
            for v in range(figure.vertex_count):
                assert Ba[v] == (a if figure.contains(v, a) else B[v])


@given(tournaments, st.integers(0, 10_000), st.data())
def test_force_winner_is_valid(T, seed, data):
    B = sample_uniform(T, seed)
    a = data.draw(st.sampled_from(T.players))
    assert is_valid(force_winner(B, a))


@given(tournaments, st.integers(0, 10_000))
def test_bracket_facts(T, seed):
    B = sample_uniform(T, seed)
    for u in range(T.vertex_count):
        assert T.contains(u, B[u])
        for v in range(T.vertex_count):
            if T.subset(u, v) and T.contains(u, B[v]):
                assert B[u] == B[v]


# -- lifting ----------------------------------------------------------------------

def test_lift_at_sink_is_identity(figure, figure_brackets):
    B1, _ = figure_brackets
    R = restrict(figure, figure.sink)
    assert lift(figure, figure.sink, restrict_bracket(B1, R), R) == B1


def test_lift_figure_left_half(figure):
    x = figure.index_of("x")
    R = restrict(figure, x)
    sub = next(B for B in enumerate_brackets(R.tournament) if R.tournament.labels[B[R.tournament.sink]] == "a")
    hat = lift(figure, x, sub, R)
    cd = {figure.index_of("c"), figure.index_of("d")}
    assert hat[figure.index_of("y")] in cd and hat[figure.sink] in cd
    # every valid completion with this property, checked by enumeration
    completions = [B for B in enumerate_brackets(figure)
                   if B[x] == figure.index_of("a") and B[figure.sink] in cd]
    assert hat in completions


def test_lift_rejects_foreign_bracket(figure):
    with pytest.raises(BracketMismatch):
        lift(figure, figure.index_of("x"), unique_bracket(from_nested("q")))


@given(tournaments, st.integers(0, 10_000), st.data())
def test_lift_then_restrict_is_identity(T, seed, data):
    u = data.draw(st.integers(0, T.vertex_count - 1))
    R = restrict(T, u)
    sub = sample_uniform(R.tournament, seed)
    hat = lift(T, u, sub, R)
    assert is_valid(hat)
    assert restrict_bracket(hat, R) == sub
    kept = set(R.old_ids)
    for x in T.matches:
        if x not in kept:
            assert not T.contains(u, hat[x])
    for a in T.players:
        if not T.contains(u, a):
            assert restrict_bracket(force_winner(hat, a), R) == sub


def test_lift_with_empty_block_is_lift(figure, figure_brackets):
    y = figure.index_of("y")
    R = restrict(figure, y)
    sub = next(enumerate_brackets(R.tournament))
    assert lift_with_partition(figure, y, sub, [], R) == lift(figure, y, sub, R)


def test_lift_with_partition_standard_4():
    T = standard_tournament(4)
    u = 5  # right child of the sink
    R = restrict(T, u)
    hat = lift_with_partition(T, u, next(enumerate_brackets(R.tournament)), [0, 1], R)
    assert hat[4] in (0, 1)
    for a, b in ((0, 1), (1, 0)):
        assert b in {hat[v] for v in T.children[T.parent[a]]}


def test_companion_violation():
    T = standard_tournament(4)
    with pytest.raises(CompanionPropertyViolated):
        check_companions(T, 5, [0])
    # 2 never meets 0 before the final, so it cannot cover 0's first match
    with pytest.raises(CompanionPropertyViolated):
        check_companions(T, 3, [0, 2])


@pytest.mark.parametrize("T", SHAPES_6, ids=lambda T: T.shape_code())
def test_lift_with_partition_companion_witness(T):
    for u in range(T.vertex_count):
        if not in_U(T, u):
            continue
        R = restrict(T, u)
        sub = next(enumerate_brackets(R.tournament))
        for block in partition_players(T, u):
            hat = lift_with_partition(T, u, sub, block, R)
            assert restrict_bracket(hat, R) == sub
            for a in block:
                seen = {hat[v] for v in T.children[T.parent[a]]}
                assert any(b in seen for b in block if b != a)

