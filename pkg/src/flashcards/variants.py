"""Generalized games driven by permutations, and permutation statistics.

A flashcard game moves the front card to position ``p``, which is the same
as right-multiplying the deck (in one-line notation) by the cycle
``(1, 2, ..., p)``.  :class:`SigmaGame` replaces that cycle by an arbitrary
finitely supported permutation ``sigma_k`` chosen by the view count ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence

from .deck import DEFAULT_CAP, NaiveDeck
from .engine import GameState, TimeTable, ViewEvent
from .schedules import schedule_from_spec

SIGMA_KINDS = ("transposition", "reversal", "cut", "shuffle", "cycle")

# Reference prefixes for the cut and shuffle families, kept for comparison only.
REFERENCE_CUT = (1, 2, 1, 3, 4, 3, 1, 4, 6, 1, 2, 7, 8, 7, 2, 8, 6, 8, 2, 1, 3, 9, 10, 9,
               1, 6, 2, 5, 1, 12, 6)
REFERENCE_SHUFFLE = (1, 2, 1, 3, 1, 2, 5, 2, 1, 4, 1, 6, 1, 9, 1, 4, 11, 4, 1, 3, 10, 3, 1,
                   2, 9, 13, 9, 2, 1, 16, 1)


def transposition(k: int) -> List[int]:
    """``(1, k+1)`` in one-line notation."""
    sigma = list(range(1, k + 2))
    sigma[0], sigma[k] = k + 1, 1
    return sigma


def reversal(k: int) -> List[int]:
    return list(range(k + 1, 0, -1))


def cut(k: int) -> List[int]:
    """Swap the blocks ``1..k`` and ``k+1..2k``."""
    return list(range(k + 1, 2 * k + 1)) + list(range(1, k + 1))


def shuffle(k: int) -> List[int]:
    """``(k+1), 1, (k+2), 2, ..., 2k, k``: riffle the first ``2k`` cards."""
    sigma = []
    for j in range(1, k + 1):
        sigma += [k + j, j]
    return sigma


def cycle(p: int) -> List[int]:
    """``(1, 2, ..., p)``: the front card moves to position ``p``."""
    return list(range(2, p + 1)) + [1]


class SigmaFamily:
    """A rule ``k -> sigma_k`` with each ``sigma_k`` in one-line notation."""

    def __init__(self, kind: str, rule: Optional[Callable[[int], Sequence[int]]] = None,
                 schedule=None) -> None:
        self.kind = kind
        if kind == "custom":
            if rule is None:
                raise ValueError("custom families need a rule")
            self._rule = rule
        elif kind == "cycle":
            sched = schedule_from_spec(schedule if schedule is not None else "slow")
            if sched.is_random:
                raise ValueError("cycle families need a deterministic schedule")
            self.schedule = sched
            self._rule = lambda k: cycle(sched(k))
        elif kind in ("transposition", "reversal", "cut", "shuffle"):
            self._rule = globals()[kind]
        else:
            raise ValueError(f"unknown sigma family {kind!r}")

    def __call__(self, k: int) -> List[int]:
        sigma = list(self._rule(k))
        if sorted(sigma) != list(range(1, len(sigma) + 1)):
            raise ValueError(f"sigma_{k} is not a permutation of 1..{len(sigma)}")
        return sigma

    def support(self, k: int) -> int:
        """Length of the one-line word for ``sigma_k``."""
        if self.kind in ("transposition", "reversal"):
            return k + 1
        if self.kind in ("cut", "shuffle"):
            return 2 * k
        if self.kind == "cycle":
            return self.schedule(k)
        return len(self(k))

    def apply(self, deck: NaiveDeck, k: int) -> None:
        """Right-multiply ``deck`` by ``sigma_k`` in place.

        Built-in families use slice operations; the result is the same as
        ``deck.permute_prefix(self(k))``.
        """
        kind = self.kind
        if kind == "custom":
            deck.permute_prefix(self(k))
            return
        s = self.support(k)
        deck._check_cap(s)
        deck._materialize(s)
        a = deck.active
        if kind == "transposition":
            a[0], a[k] = a[k], a[0]
        elif kind == "reversal":
            a[:s] = a[s - 1::-1]
        elif kind == "cut":
            a[:s] = a[k:s] + a[:k]
        elif kind == "shuffle":
            head, tail = a[:k], a[k:s]
            a[0:s:2] = tail
            a[1:s:2] = head
        else:
            a.insert(s - 1, a.pop(0))

    def __repr__(self) -> str:
        return f"SigmaFamily({self.kind!r})"


class SigmaGame:
    """Game where viewing a card for the ``k``-th time applies ``sigma_k``."""

    def __init__(self, family: SigmaFamily, cap: int = DEFAULT_CAP) -> None:
        self.family = family
        self.deck = NaiveDeck(cap)
        self.timetable = TimeTable()
        self._counts = [0, 1]
        self.timetable._record(1, 1)
        self.t = 1

    @property
    def counts(self) -> List[int]:
        return self._counts

    def count_of(self, n: int) -> int:
        return self._counts[n] if n < len(self._counts) else 0

    @property
    def current(self) -> ViewEvent:
        return self.timetable.event(self.t)

    def step(self) -> ViewEvent:
        k = self._counts[self.deck.front()]
        self.family.apply(self.deck, k)
        card = self.deck.front()
        while card >= len(self._counts):
            self._counts.append(0)
        self._counts[card] += 1
        self.timetable._record(card, self._counts[card])
        self.t += 1
        return self.current

    def run_until_time(self, t_stop: int) -> None:
        while self.t < t_stop:
            self.step()


def sigma_step(state: SigmaGame) -> ViewEvent:
    return state.step()


def sigma_viewing_prefix(family: SigmaFamily, length: int) -> List[int]:
    game = SigmaGame(family)
    game.run_until_time(length)
    return game.timetable.viewing(length)


def variant_gap_check(n_max: int, k_max: int):
    """``T_n(k) - T_n(k-1) = n + k - 1`` in the transposition game."""
    from .analysis import CheckReport

    game = SigmaGame(SigmaFamily("transposition"))
    tt = game.timetable
    rep = CheckReport()
    c = rep.add("transposition_gap", f"T_n(k)-T_n(k-1) = n+k-1, n<={n_max}, 2<=k<={k_max}")
    # T_n(k) grows like (n+k)^2 / 2; run until the last needed entry exists.
    while any(tt.get(n, k_max) is None for n in range(1, n_max + 1)):
        game.run_until_time(game.t + 1000)
    for n in range(1, n_max + 1):
        row = tt.times(n)
        for k in range(2, k_max + 1):
            c.checked += 1
            if row[k - 1] - row[k - 2] != n + k - 1:
                c.violations.append((n, k, row[k - 1] - row[k - 2]))
    return rep


# -- permutation statistics ------------------------------------------------

class DeckStats(NamedTuple):
    t: int
    inv: int
    des: int


def inversions(seq: Sequence[int]) -> int:
    """Inversion count by merge sort, ``O(L log L)``."""
    def sort_count(a: List[int]):
        if len(a) < 2:
            return a, 0
        mid = len(a) // 2
        left, x = sort_count(a[:mid])
        right, y = sort_count(a[mid:])
        merged = []
        inv = x + y
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                inv += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv

    return sort_count(list(seq))[1]


def inversions_naive(seq: Sequence[int]) -> int:
    n = len(seq)
    return sum(1 for a in range(n) for b in range(a + 1, n) if seq[a] > seq[b])


def descents(seq: Sequence[int]) -> int:
    return sum(1 for a, b in zip(seq, seq[1:]) if a > b)


def deck_stats(state) -> DeckStats:
    """Inversions and descents of the whole (infinite) deck.

    Every card behind the active prefix exceeds every active card and the
    tail is increasing, so both statistics live on the active prefix; the
    boundary contributes nothing.
    """
    prefix = state.deck.prefix()
    return DeckStats(state.t, inversions(prefix), descents(prefix))


def stats_timeseries(schedule, t_max: int) -> List[DeckStats]:
    """``DeckStats`` at ``t = 1..t_max``, updating ``inv`` incrementally.

    Moving front card ``x`` past cards ``y`` in positions ``2..m`` changes
    the inversion count by ``#{y > x} - #{y < x}``.
    """
    state = GameState(schedule, NaiveDeck())
    active = state.deck.active
    out = [DeckStats(1, 0, 0)]
    inv = 0
    for _ in range(t_max - 1):
        m = state.next_position()
        x = state.deck.front()
        passed = state.deck.prefix(m)[1:]
        bigger = sum(1 for y in passed if y > x)
        inv += bigger - (len(passed) - bigger)
        state.step()
        out.append(DeckStats(state.t, inv, descents(active)))
    return out


def stats_to_csv(series: Sequence[DeckStats]) -> str:
    return "t,inv,des\n" + "".join(f"{s.t},{s.inv},{s.des}\n" for s in series)


@dataclass
class ReferenceComparison:
    kind: str
    reference: tuple
    simulated: List[int]

    @property
    def first_mismatch(self) -> Optional[int]:
        """1-based index of the first disagreement, or ``None``."""
        for i, (a, b) in enumerate(zip(self.reference, self.simulated), 1):
            if a != b:
                return i
        return None


def compare_reference(kind: str) -> ReferenceComparison:
    reference = {"cut": REFERENCE_CUT, "shuffle": REFERENCE_SHUFFLE}[kind]
    return ReferenceComparison(kind, reference,
                               sigma_viewing_prefix(SigmaFamily(kind), len(reference)))
