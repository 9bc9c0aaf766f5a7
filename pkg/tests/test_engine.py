import io
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from flashcards import (DeckCapacityError, GameState, NaiveDeck, StepBudgetExceeded,
                        TimeTable, count_of, counting_prefix, init_game, random_schedule,
                        run_until_seen, run_until_time, schedule_table, simulate, step,
                        viewing_prefix)
from flashcards.engine import scan_deck_repeats
from flashcards.schedules import ScheduleError

from conftest import COUNTING_30, VIEWING_30


def test_init():
    for kind in ("slow", "recap"):
        g = init_game(kind)
        assert tuple(g.current) == (1, 1, 1)
        assert g.deck.front() == 1
        assert g.counts[1] == 1


def test_first_steps():
    g = init_game("slow")
    assert tuple(step(g)) == (2, 2, 1)
    assert tuple(step(g)) == (3, 1, 2)
    assert g.deck.prefix(4) == [1, 2, 3, 4]


def test_constant_one_schedule():
    g = init_game("constant:1")
    for t in range(2, 20):
        assert tuple(step(g)) == (t, 1, t)


def test_golden_sequences():
    assert viewing_prefix("slow", 30) == VIEWING_30
    assert counting_prefix("slow", 30) == COUNTING_30


def test_run_until_seen_and_count_of():
    g = init_game("slow")
    assert count_of(g, 1) == 1
    assert count_of(g, 7) == 0
    assert run_until_seen(g, 1, 2) == 3
    assert g.t == 3
    assert count_of(g, 1) == 2
    # Already reached: no further steps.
    assert run_until_seen(g, 2, 1) == 2
    assert g.t == 3
    with pytest.raises(ValueError):
        count_of(g, 0)


def test_clock_anchors():
    g = simulate("slow", 10)
    tt = g.timetable
    assert (tt[1, 1], tt[2, 1], tt[1, 2]) == (1, 2, 3)
    with pytest.raises(KeyError):
        tt[40, 1]
    assert (40, 1) not in tt
    assert (1, 1) in tt


def test_budget_exceeded():
    g = init_game("constant:5")
    with pytest.raises(StepBudgetExceeded):
        g.run_until_seen(6, 1, budget=1000)
    assert g.t == 1001
    assert g.timetable.t == g.t
    with pytest.raises(StepBudgetExceeded):
        g.run_while(lambda s: True, budget=100, chunk=10)


def test_cap_breach_keeps_state_consistent():
    g = GameState("recap", cap=64)
    with pytest.raises(DeckCapacityError):
        g.run_until_time(10 ** 4)
    assert g.timetable.t == g.t
    assert sum(g.counts) == g.t
    assert g.next_position() > 64


def test_table_error_extension():
    g = init_game(schedule_table([2, 3], extend="error"))
    with pytest.raises(ScheduleError):
        g.run_until_time(100)
    assert g.timetable.t == g.t


def test_fresh_deck_required():
    d = NaiveDeck()
    d.remove_front_insert(2)
    with pytest.raises(ValueError):
        GameState("slow", d)


def test_count_conservation_and_dominance_every_step():
    g = init_game("slow")
    for _ in range(3000):
        g.step()
        c = g.counts
        assert sum(c) == g.t
        assert all(c[i] >= c[i + 1] for i in range(1, len(c) - 1))
        assert c[g.deck.front()] >= 1


def test_monotone_dominance_long_run():
    g = simulate("slow", 10 ** 5)
    tt = g.timetable
    for j in range(2, 201):
        hi, lo = tt.times(j - 1), tt.times(j)
        # c_{j-1}(t) >= c_j(t) for all t  <=>  T_{j-1}(k) < T_j(k) whenever T_j(k) exists.
        assert len(hi) >= len(lo)
        assert all(a < b for a, b in zip(hi, lo))


def test_dominance_brute_force():
    view = viewing_prefix("slow", 3000)
    counts = Counter()
    for card in view:
        counts[card] += 1
        assert all(counts[i] >= counts[j] for i in range(1, 60) for j in range(i + 1, 61))


def test_timetable_structure():
    g = simulate("slow", 5000)
    tt = g.timetable
    values = sorted(x for n in range(1, tt.max_card + 1) for x in tt.times(n))
    assert values == list(range(1, 5001))
    for n in range(1, tt.max_card + 1):
        row = tt.times(n)
        assert all(a < b for a, b in zip(row, row[1:]))
    assert tt.count_at(1, 3) == 2
    assert tt.count_at(7, 1) == 0
    with pytest.raises(ValueError):
        tt.count_at(1, 10 ** 6)
    assert [tuple(e) for e in tt.events(1, 3)] == [(1, 1, 1), (2, 2, 1), (3, 1, 2)]


def _next_seen(tt, card, t):
    for x in tt.times(card):
        if x > t:
            return x
    return None


def test_no_passing_and_position_floor():
    rnd = random.Random(3)
    samples = sorted(rnd.sample(range(2, 8000), 60))
    g = init_game("slow")
    decks = {}
    for t in samples:
        g.run_until_time(t)
        decks[t] = g.deck.prefix()
    g.run_until_time(10 ** 5)
    tt = g.timetable
    inf = float("inf")
    for t, deck in decks.items():
        nexts = [_next_seen(tt, c, t) or inf for c in deck]
        # Behind the front card, order of next viewings equals deck order.
        for a, b in zip(nexts[1:], nexts[2:]):
            assert a < b or a == b == inf
        for m, nxt in enumerate(nexts[1:], 2):
            assert nxt >= t + m - 1


@pytest.mark.parametrize("schedule", ["slow", "recap", random_schedule("uniform", 17),
                                      random_schedule("poisson", 5)])
def test_engine_deck_oracle(schedule):
    fast = simulate(schedule, 10 ** 5)
    slow = simulate(schedule, 10 ** 5, naive=True)
    assert fast.timetable.viewing() == slow.timetable.viewing()
    assert fast.timetable.counting() == slow.timetable.counting()
    assert fast.deck.prefix() == slow.deck.prefix()
    assert fast.counts == slow.counts


def test_perfect_learning():
    g = simulate("constant:5", 10 ** 4)
    assert g.timetable.max_card == 5
    g = init_game("slow")
    assert g.run_until_seen(50, 1) <= 49 ** 2 + 1
    assert g.timetable.max_card == 50


def test_csv_round_trip():
    g = simulate("slow", 500)
    text = g.timetable.to_csv()
    assert text.startswith("t,card,k\n1,1,1\n2,2,1\n3,1,2\n")
    back = TimeTable.read_csv(io.StringIO(text))
    assert back.viewing() == g.timetable.viewing()
    assert back.counting() == g.timetable.counting()
    assert back.get(3, 2) == g.timetable.get(3, 2)
    with pytest.raises(ValueError):
        TimeTable.read_csv(io.StringIO("a,b\n"))
    with pytest.raises(ValueError):
        TimeTable.read_csv(io.StringIO("t,card,k\n2,1,1\n"))


def test_run_until_time_is_idempotent():
    g = init_game("slow")
    run_until_time(g, 50)
    run_until_time(g, 20)
    assert g.t == 50


def test_deck_repeats_scan():
    # The deck is the identity at t=1 and again at t=3.
    repeats = scan_deck_repeats("slow", 3000)
    assert repeats[0] == (1, 3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=6))
def test_prop_invariants_any_table_schedule(values):
    sched = schedule_table(values)
    fast = simulate(sched, 400)
    slow = simulate(sched, 400, naive=True)
    assert fast.timetable.viewing() == slow.timetable.viewing()
    c = fast.counts
    assert sum(c) == fast.t
    assert all(c[i] >= c[i + 1] for i in range(1, len(c) - 1))
    if sched.bound is not None:
        assert fast.timetable.max_card <= sched.bound
