"""Conversions between the equivalent descriptions of a flashcard game.

* viewing sequence <-> counting sequence
* deck of cards <-> deck of times (view counts read in deck order)

Both decoders rely on the same two facts about every flashcard game whose
positions depend on the view count alone: smaller-numbered cards are never
seen less often than larger-numbered ones, and among cards seen equally
often the smaller number is in front.  Random schedules break both facts,
so their sequences do not decode.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable, List, Sequence, TextIO, Tuple


class DecodeError(ValueError):
    """Input is not a (prefix of a) reachable sequence or deck of times."""


def viewing_to_counting(viewing: Iterable[int]) -> List[int]:
    seen: Counter = Counter()
    out = []
    for card in viewing:
        seen[card] += 1
        out.append(seen[card])
    return out


def counting_to_viewing(counting: Sequence[int]) -> List[int]:
    """Label the occurrences of each count ``k`` left to right with 1, 2, ...

    Raises :class:`DecodeError` if the labels do not reproduce ``counting``.
    """
    labels: defaultdict = defaultdict(int)
    out = []
    for i, k in enumerate(counting):
        if k < 1:
            raise DecodeError(f"counts must be positive (index {i}: {k})")
        labels[k] += 1
        out.append(labels[k])
    if viewing_to_counting(out) != list(counting):
        raise DecodeError("not a consistent counting sequence")
    return out


def deck_to_times(state) -> List[int]:
    """View counts in deck order, truncated after the last nonzero entry."""
    counts = state.counts
    n_counts = len(counts)
    # Card 1 is seen at t = 1 before anything is materialized.
    span = max(state.deck.active_length, n_counts - 1)
    times = [counts[c] if c < n_counts else 0 for c in state.deck.prefix(span)]
    while times and times[-1] == 0:
        times.pop()
    return times


def times_to_deck(times: Sequence[int]) -> Tuple[int, List[int]]:
    """Recover ``(t, deck prefix)`` from a deck of times.

    The front card was counted at the current time, so its entry is
    decremented before ranking.  Larger counts get smaller card numbers and
    ties are numbered left to right.
    """
    times = list(times)
    if not times:
        raise DecodeError("empty deck of times")
    if any(v < 0 for v in times):
        raise DecodeError("view counts must be non-negative")
    if times[0] < 1:
        raise DecodeError("the front card has always been seen at least once")
    t = sum(times)
    keys = list(times)
    keys[0] -= 1
    order = sorted(range(len(keys)), key=lambda i: (-keys[i], i))
    deck = [0] * len(keys)
    for card, i in enumerate(order, 1):
        deck[i] = card
    return t, deck


def c1_from_deck(deck_prefix: Sequence[int], t: int) -> int:
    """``c_1(t)`` in the slow game read off the deck alone, for ``t > 3``.

    If ``k`` is the largest card not in position ``k``, card 1 has been
    seen ``k - 1`` times before the current viewing; add one when card 1
    is the card in front.  The identity deck (``t = 1`` and ``t = 3``)
    carries no information.
    """
    if t <= 2:
        raise ValueError("only valid for t > 2")
    k = max((c for p, c in enumerate(deck_prefix, 1) if c != p), default=None)
    if k is None:
        raise ValueError("the identity deck does not determine c_1")
    return k - 1 + (deck_prefix[0] == 1)


def count_lower_bounds(deck_prefix: Sequence[int]) -> dict:
    """``{card: j - 1}`` where card sits at position ``j``.

    For every card that has been seen, ``c_card(t) >= j - 1``.
    """
    return {c: j - 1 for j, c in enumerate(deck_prefix, 1)}


# -- text formats ---------------------------------------------------------

def write_sequence(seq: Iterable[int], out: TextIO) -> None:
    out.writelines(f"{v}\n" for v in seq)


def read_sequence(src: TextIO) -> List[int]:
    return [int(line) for line in src if line.strip()]


def format_times(times: Sequence[int]) -> str:
    return ",".join(map(str, times))


def parse_times(text: str) -> List[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError as exc:
        raise DecodeError(f"bad deck of times {text!r}: {exc}") from None
