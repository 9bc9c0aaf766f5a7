"""The flashcard-game clock.

Clock convention: at ``t = 1`` card 1 is at the front and has already been
seen once.  Each step moves the front card, seen ``k`` times, to position
``p_k``, advances the clock, and counts one more viewing for the card that
is now in front.
"""
from __future__ import annotations

import csv
import io
from array import array
from bisect import bisect_right
from typing import Callable, Iterator, List, NamedTuple, Optional, TextIO, Union

from .deck import DEFAULT_CAP, Deck, NaiveDeck
from .schedules import Schedule, ScheduleError, schedule_from_spec

DEFAULT_BUDGET = 10 ** 8


class StepBudgetExceeded(RuntimeError):
    """A run hit its step budget before reaching its target."""


class ViewEvent(NamedTuple):
    t: int
    card: int
    k: int


class TimeTable:
    """Append-only event log plus per-card arrays of viewing times.

    ``T(n, k)`` is ``times(n)[k - 1]``.  Time ``t`` is implicit in the log:
    entry ``t - 1`` holds the card seen at ``t`` and its view count.
    """

    def __init__(self) -> None:
        self._cards = array("q")
        self._ks = array("q")
        self._times: List[array] = [array("q")]

    def _record(self, card: int, k: int) -> None:
        self._cards.append(card)
        self._ks.append(k)
        times = self._times
        while card >= len(times):
            times.append(array("q"))
        times[card].append(len(self._cards))

    def __len__(self) -> int:
        return len(self._cards)

    @property
    def t(self) -> int:
        return len(self._cards)

    @property
    def max_card(self) -> int:
        """Largest card seen so far."""
        return len(self._times) - 1

    def get(self, n: int, k: int) -> Optional[int]:
        """``T_n(k)`` if it has happened yet, else ``None``."""
        if n < 1 or k < 1 or n >= len(self._times):
            return None
        row = self._times[n]
        return row[k - 1] if k <= len(row) else None

    def __getitem__(self, key) -> int:
        n, k = key
        value = self.get(n, k)
        if value is None:
            raise KeyError(f"T_{n}({k}) not reached by t={self.t}")
        return value

    def __contains__(self, key) -> bool:
        return self.get(*key) is not None

    def times(self, n: int) -> array:
        """Viewing times of card ``n`` so far (empty for unseen cards)."""
        if n < 1:
            raise ValueError("cards are positive integers")
        return self._times[n] if n < len(self._times) else array("q")

    def count_at(self, n: int, t: int) -> int:
        """``c_n(t)`` for any ``t`` up to the recorded horizon."""
        if t > self.t:
            raise ValueError(f"time {t} is beyond the recorded horizon {self.t}")
        return bisect_right(self.times(n), t)

    def event(self, t: int) -> ViewEvent:
        return ViewEvent(t, self._cards[t - 1], self._ks[t - 1])

    def events(self, start: int = 1, stop: Optional[int] = None) -> Iterator[ViewEvent]:
        stop = self.t if stop is None else min(stop, self.t)
        cards, ks = self._cards, self._ks
        for t in range(start, stop + 1):
            yield ViewEvent(t, cards[t - 1], ks[t - 1])

    def viewing(self, length: Optional[int] = None) -> List[int]:
        return self._cards[:length].tolist()

    def counting(self, length: Optional[int] = None) -> List[int]:
        return self._ks[:length].tolist()

    def write_csv(self, out: TextIO) -> None:
        """Event log as CSV with header ``t,card,k``."""
        out.write("t,card,k\n")
        cards, ks = self._cards, self._ks
        out.writelines(f"{t},{cards[t - 1]},{ks[t - 1]}\n" for t in range(1, self.t + 1))

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    @classmethod
    def read_csv(cls, src: TextIO) -> "TimeTable":
        reader = csv.reader(src)
        header = next(reader, None)
        if header != ["t", "card", "k"]:
            raise ValueError(f"expected header t,card,k, got {header}")
        table = cls()
        for row in reader:
            t, card, k = (int(x) for x in row)
            if t != table.t + 1:
                raise ValueError(f"event log out of order at t={t}")
            table._record(card, k)
        return table


class GameState:
    """A running flashcard game.

    ``deck`` may be any object with the deck protocol (``front``,
    ``remove_front_insert``, ``card_at``, ``position_of``, ``prefix``);
    by default an efficient :class:`~flashcards.deck.Deck` is created.
    """

    def __init__(self, schedule: Union[Schedule, str, dict], deck=None, *,
                 cap: int = DEFAULT_CAP) -> None:
        self.schedule = schedule_from_spec(schedule)
        self.deck = Deck(cap=cap) if deck is None else deck
        if self.deck.front() != 1 or self.deck.active_length:
            raise ValueError("game must start from a fresh identity deck")
        self.timetable = TimeTable()
        self._counts = [0, 1]
        self.timetable._record(1, 1)
        self.t = 1

    @property
    def current(self) -> ViewEvent:
        return self.timetable.event(self.t)

    @property
    def counts(self) -> List[int]:
        """``counts[n] = c_n(t)`` for every seen card (index 0 unused)."""
        return self._counts

    def count_of(self, n: int) -> int:
        if n < 1:
            raise ValueError("cards are positive integers")
        return self._counts[n] if n < len(self._counts) else 0

    def next_position(self) -> int:
        """Where the current front card will be inserted by the next step."""
        card = self.deck.front()
        return self.schedule(self._counts[card], self.t)

    def step(self) -> ViewEvent:
        self._advance(1)
        return self.current

    def run_until_time(self, t_stop: int) -> None:
        if t_stop > self.t:
            self._advance(t_stop - self.t)

    def run_until_seen(self, n: int, k: int = 1, budget: int = DEFAULT_BUDGET) -> int:
        """Advance until card ``n`` has been seen ``k`` times; return ``T_n(k)``.

        Raises :class:`StepBudgetExceeded` after ``budget`` further steps.
        """
        done = self.timetable.get(n, k)
        if done is not None:
            return done
        if self._advance(budget, target=(n, k)):
            return self.t
        raise StepBudgetExceeded(
            f"card {n} not seen {k} times within {budget} steps (t={self.t}); "
            "the schedule may be bounded")

    def run_while(self, keep_going: Callable[["GameState"], bool],
                  budget: int = DEFAULT_BUDGET, chunk: int = 4096) -> None:
        """Advance in chunks while ``keep_going(self)`` holds."""
        spent = 0
        while keep_going(self):
            if spent >= budget:
                raise StepBudgetExceeded(f"condition still true after {budget} steps")
            n = min(chunk, budget - spent)
            self._advance(n)
            spent += n

    def _advance(self, nsteps: int, target=None) -> bool:
        """Run up to ``nsteps`` steps; return True if ``target`` was viewed."""
        deck = self.deck
        move = deck.remove_front_insert
        front = deck.front
        counts = self._counts
        tt = self.timetable
        log_card = tt._cards.append
        log_k = tt._ks.append
        times = tt._times
        sched = self.schedule
        random = sched.is_random
        table = None if random else sched.table(64)
        tn, tk = target if target is not None else (0, 0)
        t = self.t
        card = front()
        k = counts[card]
        hit = False
        try:
            for _ in range(nsteps):
                if random:
                    m = sched(k, t)
                else:
                    if k >= len(table):
                        table = sched.table(2 * k)
                        if k >= len(table):
                            raise ScheduleError(f"schedule has no entry for k={k}")
                    m = table[k]
                move(m)
                card = front()
                t += 1
                if card < len(counts):
                    k = counts[card] + 1
                    counts[card] = k
                    times[card].append(t)
                else:
                    while card > len(counts):
                        counts.append(0)
                    counts.append(1)
                    k = 1
                    while card >= len(times):
                        times.append(array("q"))
                    times[card].append(t)
                log_card(card)
                log_k(k)
                if card == tn and k == tk:
                    hit = True
                    break
        finally:
            self.t = t
        return hit

    def snapshot(self) -> List[int]:
        """Active deck prefix with any trailing identity run trimmed."""
        cards = self.deck.prefix()
        n = len(cards)
        while n and cards[n - 1] == self.deck.tail_start - (len(cards) - n) - 1:
            n -= 1
        return cards[:n]


def init_game(schedule, deck=None, *, cap: int = DEFAULT_CAP) -> GameState:
    return GameState(schedule, deck, cap=cap)


def step(state: GameState) -> ViewEvent:
    return state.step()


def run_until_time(state: GameState, t_stop: int) -> None:
    state.run_until_time(t_stop)


def run_until_seen(state: GameState, n: int, k: int = 1, budget: int = DEFAULT_BUDGET) -> int:
    return state.run_until_seen(n, k, budget)


def count_of(state: GameState, n: int) -> int:
    return state.count_of(n)


def simulate(schedule, steps: int, *, naive: bool = False, cap: int = DEFAULT_CAP) -> GameState:
    """A game advanced to time ``steps``."""
    deck = NaiveDeck(cap) if naive else Deck(cap)
    state = GameState(schedule, deck)
    state.run_until_time(steps)
    return state


def viewing_prefix(schedule, length: int) -> List[int]:
    if length < 1:
        raise ValueError("length must be >= 1")
    return simulate(schedule, length).timetable.viewing(length)


def counting_prefix(schedule, length: int) -> List[int]:
    if length < 1:
        raise ValueError("length must be >= 1")
    return simulate(schedule, length).timetable.counting(length)


def scan_deck_repeats(schedule, t_max: int) -> List[tuple]:
    """Pairs ``(t0, t1)`` with ``t0 < t1 <= t_max`` and identical decks."""
    state = GameState(schedule)
    seen = {tuple(state.snapshot()): 1}
    repeats = []
    for t in range(2, t_max + 1):
        state.step()
        key = tuple(state.snapshot())
        if key in seen:
            repeats.append((seen[key], t))
        else:
            seen[key] = t
    return repeats
