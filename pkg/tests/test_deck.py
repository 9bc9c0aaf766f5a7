import random

import pytest
from hypothesis import given, settings, strategies as st

from flashcards.deck import Deck, DeckCapacityError, NaiveDeck, new_deck


@pytest.fixture(params=["fast", "naive"])
def make(request):
    if request.param == "fast":
        return lambda cap=1 << 24: Deck(cap, load=4)
    return lambda cap=1 << 24: NaiveDeck(cap)


def test_identity_start(make):
    d = make()
    assert d.front() == 1
    assert d.card_at(1) == 1
    assert d.card_at(100) == 100
    assert d.card_at(7) == 7
    assert d.position_of(5) == 5
    assert d.active_length == 0


def test_first_moves(make):
    d = make()
    d.remove_front_insert(2)
    assert d.prefix(4) == [2, 1, 3, 4]
    assert d.front() == 2
    assert d.position_of(1) == 2
    d.remove_front_insert(2)
    assert d.prefix(4) == [1, 2, 3, 4]


def test_front_after_third_card(make):
    d = make()
    d.remove_front_insert(2)
    d.remove_front_insert(3)
    assert d.prefix(4) == [1, 3, 2, 4]
    d2 = make()
    d2.remove_front_insert(3)
    assert d2.prefix(4) == [2, 3, 1, 4]
    assert d2.front() == 2


def test_insert_at_front_is_noop(make):
    d = make()
    d.remove_front_insert(5)
    before = d.prefix(10)
    d.remove_front_insert(1)
    assert d.prefix(10) == before


def test_prefix_includes_tail(make):
    d = make()
    d.remove_front_insert(3)
    assert d.prefix(6) == [2, 3, 1, 4, 5, 6]
    assert d.prefix() == [2, 3, 1]


def test_cap(make):
    d = make(cap=10)
    d.remove_front_insert(10)
    with pytest.raises(DeckCapacityError):
        d.remove_front_insert(11)
    # A failed insert leaves the deck untouched.
    assert d.prefix(10) == [2, 3, 4, 5, 6, 7, 8, 9, 10, 1]


def test_bad_position(make):
    d = make()
    with pytest.raises(ValueError):
        d.remove_front_insert(0)
    with pytest.raises(ValueError):
        d.card_at(0)
    with pytest.raises(ValueError):
        d.position_of(0)


def test_copy_is_independent(make):
    d = make()
    d.remove_front_insert(4)
    e = d.copy()
    e.remove_front_insert(3)
    assert d.prefix(5) == [2, 3, 4, 1, 5]
    assert e.prefix(5) == [3, 4, 2, 1, 5]


def test_equality_ignores_representation():
    a, b = Deck(load=4), NaiveDeck()
    for m in (5, 2, 9, 1, 3):
        a.remove_front_insert(m)
        b.remove_front_insert(m)
    assert a == b
    b.remove_front_insert(2)
    assert a != b


def test_new_deck():
    assert isinstance(new_deck(), Deck)
    assert new_deck(cap=5).cap == 5


def test_oracle_equivalence_random_workload():
    rnd = random.Random(20240601)
    fast, slow = Deck(), NaiveDeck()
    for _ in range(10 ** 5):
        m = rnd.randint(1, 10 ** 4)
        fast.remove_front_insert(m)
        slow.remove_front_insert(m)
        assert fast.front() == slow.front()
    assert fast.prefix() == slow.prefix()
    assert fast.active_length == slow.active_length
    for _ in range(2000):
        p = rnd.randint(1, fast.active_length + 100)
        c = slow.card_at(p)
        assert fast.card_at(p) == c
        assert fast.position_of(c) == p


def test_permute_prefix_matches_naive():
    def script(deck):
        rnd = random.Random(5)
        for _ in range(300):
            s = rnd.randint(1, 60)
            sigma = list(range(1, s + 1))
            rnd.shuffle(sigma)
            deck.permute_prefix(sigma)
            deck.remove_front_insert(rnd.randint(1, 70))
        return deck

    fast, slow = script(Deck(load=8)), script(NaiveDeck())
    assert fast.prefix() == slow.prefix()
    for p in range(1, fast.active_length + 1):
        assert fast.position_of(fast.card_at(p)) == p


def test_permute_prefix_semantics():
    d = NaiveDeck()
    d.remove_front_insert(3)  # 2,3,1
    d.permute_prefix([3, 1, 2])  # new[i] = old[sigma(i)]
    assert d.prefix(4) == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        d.permute_prefix([1, 1])


ops = st.lists(st.integers(min_value=1, max_value=40), max_size=200)


@settings(max_examples=200, deadline=None)
@given(ops, st.integers(min_value=4, max_value=9))
def test_prop_fast_equals_naive(moves, load):
    fast, slow = Deck(load=load), NaiveDeck()
    for m in moves:
        fast.remove_front_insert(m)
        slow.remove_front_insert(m)
        assert fast.front() == slow.front()
    assert fast.prefix(60) == slow.prefix(60)


@settings(max_examples=200, deadline=None)
@given(ops)
def test_prop_round_trip(moves):
    d = Deck(load=4)
    for m in moves:
        d.remove_front_insert(m)
    for p in range(1, d.active_length + 101):
        assert d.position_of(d.card_at(p)) == p


@settings(max_examples=200, deadline=None)
@given(ops, st.integers(min_value=1, max_value=40))
def test_prop_single_step_displacement(moves, m):
    d = Deck(load=4)
    for x in moves:
        d.remove_front_insert(x)
    horizon = max(d.active_length, m) + 5
    before = {c: d.position_of(c) for c in d.prefix(horizon)}
    moved = d.front()
    d.remove_front_insert(m)
    for c, p in before.items():
        delta = d.position_of(c) - p
        if c == moved:
            assert delta == m - 1
        else:
            assert delta in (-1, 0)


@settings(max_examples=100, deadline=None)
@given(ops)
def test_prop_active_is_permutation(moves):
    d = Deck(load=5)
    for m in moves:
        d.remove_front_insert(m)
    active = d.prefix()
    # The untouched tail starts right after the largest materialized card.
    assert sorted(active) == list(range(1, len(active) + 1))
    assert d.card_at(len(active) + 1) == len(active) + 1
