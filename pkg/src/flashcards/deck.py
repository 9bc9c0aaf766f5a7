"""Order-maintenance representations of an infinite flashcard deck.

A deck is a permutation of the positive integers that differs from the
identity on a finite prefix only.  Both classes here store that prefix
explicitly and describe everything behind it by a single counter,
``tail_start``: position ``p > L`` holds card ``tail_start + (p - L - 1)``.

:class:`Deck` keeps the prefix in a list of blocks (a two-level B-tree in
the spirit of ``sortedcontainers``) with a Fenwick index over the block
sizes, so positional access costs ``O(log(L / load) + load)``.
:class:`NaiveDeck` keeps a single flat list and is the testing oracle.
"""
from __future__ import annotations

from itertools import chain
from typing import Iterator, List, Optional

DEFAULT_CAP = 1 << 24
DEFAULT_LOAD = 1000


class DeckCapacityError(RuntimeError):
    """An insertion position exceeded the deck's materialization cap."""


def _check_position(p: int, what: str = "position") -> None:
    if p < 1:
        raise ValueError(f"{what} must be >= 1, got {p}")


class _DeckBase:
    cap: int

    def _check_cap(self, m: int) -> None:
        if m > self.cap:
            raise DeckCapacityError(
                f"insertion position {m} exceeds materialization cap {self.cap}"
            )

    # The concrete classes provide these.
    @staticmethod
    def _check_permutation(sigma: List[int]) -> None:
        s = len(sigma)
        if set(sigma) != set(range(1, s + 1)):
            raise ValueError(f"not a permutation of 1..{s}: {sigma[:20]}")

    def card_at(self, p: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def active_length(self) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def prefix(self, stop: Optional[int] = None) -> List[int]:
        """Cards in positions ``1..stop`` (default: the active prefix)."""
        raise NotImplementedError  # pragma: no cover

    def __iter__(self) -> Iterator[int]:
        return iter(self.prefix())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _DeckBase):
            return NotImplemented
        n = max(self.active_length, other.active_length) + 1
        return self.prefix(n) == other.prefix(n)

    def __repr__(self) -> str:
        shown = self.prefix(min(self.active_length, 12))
        more = ", ..." if self.active_length > 12 else ""
        return f"{type(self).__name__}([{', '.join(map(str, shown))}{more}], tail_start={self.tail_start})"

    tail_start: int


class NaiveDeck(_DeckBase):
    """Flat-list deck; every operation is linear in the active length."""

    def __init__(self, cap: int = DEFAULT_CAP) -> None:
        self.cap = cap
        self.active: List[int] = []
        self.tail_start = 1

    @property
    def active_length(self) -> int:
        return len(self.active)

    def _materialize(self, m: int) -> None:
        L = len(self.active)
        if m > L:
            self.active.extend(range(self.tail_start, self.tail_start + m - L))
            self.tail_start += m - L

    def remove_front_insert(self, m: int) -> None:
        _check_position(m)
        self._check_cap(m)
        self._materialize(m)
        if m > 1:
            self.active.insert(m - 1, self.active.pop(0))

    def front(self) -> int:
        return self.active[0] if self.active else self.tail_start

    def card_at(self, p: int) -> int:
        _check_position(p)
        L = len(self.active)
        if p <= L:
            return self.active[p - 1]
        return self.tail_start + p - L - 1

    def position_of(self, c: int) -> int:
        _check_position(c, "card")
        if c >= self.tail_start:
            return len(self.active) + 1 + c - self.tail_start
        return self.active.index(c) + 1

    def prefix(self, stop: Optional[int] = None) -> List[int]:
        L = len(self.active)
        if stop is None or stop <= L:
            return self.active[:stop]
        return self.active + list(range(self.tail_start, self.tail_start + stop - L))

    def permute_prefix(self, sigma: List[int]) -> None:
        """Right-multiply by a permutation given in one-line notation.

        Afterwards position ``i`` holds the card previously at ``sigma[i-1]``.
        """
        s = len(sigma)
        self._check_permutation(sigma)
        self._check_cap(s)
        self._materialize(s)
        old = self.active[:s]
        self.active[:s] = [old[j - 1] for j in sigma]

    def copy(self) -> "NaiveDeck":
        other = NaiveDeck(self.cap)
        other.active = list(self.active)
        other.tail_start = self.tail_start
        return other


class Deck(_DeckBase):
    """Blocked-list deck with a Fenwick index over block sizes.

    ``load`` is the target block length; blocks split at ``2 * load``.
    A reverse index ``card -> block`` makes :meth:`position_of` cheap.
    """

    def __init__(self, cap: int = DEFAULT_CAP, load: int = DEFAULT_LOAD) -> None:
        if load < 4:
            raise ValueError("load must be at least 4")
        self.cap = cap
        self.load = load
        self.tail_start = 1
        self._len = 0
        self._blocks: List[List[int]] = []
        self._fen: List[int] = [0]
        self._ordinal: dict = {}
        self._top = 0
        # _owner[c] is the block holding card c, for every c < tail_start.
        self._owner: List[Optional[List[int]]] = [None]

    # -- Fenwick index over block sizes ---------------------------------
    def _rebuild(self) -> None:
        blocks = self._blocks
        n = len(blocks)
        fen = [0] * (n + 1)
        for i, b in enumerate(blocks, 1):
            fen[i] += len(b)
            j = i + (i & -i)
            if j <= n:
                fen[j] += fen[i]
        self._fen = fen
        self._ordinal = {id(b): i for i, b in enumerate(blocks)}
        self._top = 1 << (n.bit_length() - 1) if n else 0

    def _bump(self, i: int, delta: int) -> None:
        fen = self._fen
        n = len(fen) - 1
        i += 1
        while i <= n:
            fen[i] += delta
            i += i & -i

    def _count_before(self, i: int) -> int:
        """Number of cards in blocks ``0..i-1``."""
        fen = self._fen
        s = 0
        while i > 0:
            s += fen[i]
            i -= i & -i
        return s

    def _locate(self, idx: int):
        """Block ordinal and offset of the zero-based active index ``idx``."""
        fen = self._fen
        n = len(fen) - 1
        pos = 0
        step = self._top
        while step:
            nxt = pos + step
            if nxt <= n and fen[nxt] <= idx:
                pos = nxt
                idx -= fen[nxt]
            step >>= 1
        return pos, idx

    # -- materialization --------------------------------------------------
    def _materialize(self, m: int) -> None:
        need = m - self._len
        if need <= 0:
            return
        start = self.tail_start
        owner = self._owner
        blocks = self._blocks
        cards = range(start, start + need)
        i = 0
        if blocks and len(blocks[-1]) < self.load:
            last = blocks[-1]
            room = self.load - len(last)
            chunk = cards[:room]
            last.extend(chunk)
            owner.extend([last] * len(chunk))
            i = len(chunk)
        while i < need:
            chunk = list(cards[i:i + self.load])
            blocks.append(chunk)
            owner.extend([chunk] * len(chunk))
            i += len(chunk)
        self.tail_start = start + need
        self._len = m
        self._rebuild()

    # -- public API --------------------------------------------------------
    @property
    def active_length(self) -> int:
        return self._len

    def front(self) -> int:
        return self._blocks[0][0] if self._len else self.tail_start

    def remove_front_insert(self, m: int) -> None:
        if m < 1:
            raise ValueError(f"position must be >= 1, got {m}")
        if m > self._len:
            self._check_cap(m)
            self._materialize(m)
        if m == 1:
            return
        blocks = self._blocks
        first = blocks[0]
        if m <= len(first):
            first.insert(m - 1, first.pop(0))
            return
        card = first.pop(0)
        if first:
            self._bump(0, -1)
        else:
            del blocks[0]
            self._rebuild()
        idx = m - 1
        if idx == self._len - 1:
            j, off = len(blocks) - 1, len(blocks[-1])
        else:
            j, off = self._locate(idx)
        block = blocks[j]
        block.insert(off, card)
        self._owner[card] = block
        if len(block) > 2 * self.load:
            half = block[self.load:]
            del block[self.load:]
            blocks.insert(j + 1, half)
            owner = self._owner
            for c in half:
                owner[c] = half
            self._rebuild()
        else:
            self._bump(j, 1)

    def card_at(self, p: int) -> int:
        _check_position(p)
        if p > self._len:
            return self.tail_start + p - self._len - 1
        j, off = self._locate(p - 1)
        return self._blocks[j][off]

    def position_of(self, c: int) -> int:
        _check_position(c, "card")
        if c >= self.tail_start:
            return self._len + 1 + c - self.tail_start
        block = self._owner[c]
        j = self._ordinal[id(block)]
        return self._count_before(j) + block.index(c) + 1

    def prefix(self, stop: Optional[int] = None) -> List[int]:
        cards = list(chain.from_iterable(self._blocks))
        if stop is None or stop <= self._len:
            return cards[:stop]
        return cards + list(range(self.tail_start, self.tail_start + stop - self._len))

    def permute_prefix(self, sigma: List[int]) -> None:
        """Right-multiply by ``sigma`` (one-line notation); see NaiveDeck."""
        s = len(sigma)
        self._check_permutation(sigma)
        self._check_cap(s)
        self._materialize(s)
        old = self.prefix(s)
        new = [old[j - 1] for j in sigma]
        # Rewrite the touched blocks in place; block sizes are unchanged.
        i = 0
        for block in self._blocks:
            if i >= s:
                break
            take = min(len(block), s - i)
            block[:take] = new[i:i + take]
            for c in block[:take]:
                self._owner[c] = block
            i += take

    def copy(self) -> "Deck":
        other = Deck(self.cap, self.load)
        other.tail_start = self.tail_start
        other._len = self._len
        other._blocks = [list(b) for b in self._blocks]
        other._owner = [None] * len(self._owner)
        for b in other._blocks:
            for c in b:
                other._owner[c] = b
        other._rebuild()
        return other


def new_deck(cap: int = DEFAULT_CAP) -> Deck:
    """The identity deck ``1, 2, 3, ...``."""
    return Deck(cap=cap)
