"""Tableaux attached to a flashcard game.

The staircase tableau has ``T_i(j)`` in cell ``(i, j)``: row ``i`` lists the
viewing times of card ``i``.  Its restriction to entries ``<= tmax`` is
what RSK (with the order ``1 > 2 > 3 > ...``) records when fed the first
``tmax`` terms of the viewing sequence; the counting sequence records the
transpose.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, List, Sequence, TextIO

Rows = List[List[int]]

RSK_MAX_LEN = 10 ** 4


@dataclass(frozen=True)
class StaircaseTableau:
    rows: tuple
    tmax: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def shape(self) -> List[int]:
        return [len(r) for r in self.rows]

    def as_lists(self) -> Rows:
        return [list(r) for r in self.rows]

    def entries(self) -> List[int]:
        return [v for r in self.rows for v in r]

    def is_standard(self) -> bool:
        """Rows and columns strictly increase; shape is a partition."""
        rows = self.rows
        shape = self.shape
        if any(a < b for a, b in zip(shape, shape[1:])) or 0 in shape:
            return False
        for i, r in enumerate(rows):
            if any(a >= b for a, b in zip(r, r[1:])):
                return False
            if i and any(rows[i - 1][j] >= v for j, v in enumerate(r)):
                return False
        return True

    def dumps(self) -> str:
        return format_rows(self.rows)


@dataclass(frozen=True)
class TableauPair:
    P: tuple
    Q: tuple


def build_staircase(timetable, tmax: int) -> StaircaseTableau:
    """Cells ``(i, j)`` with ``T_i(j) <= tmax`` from a recorded game."""
    if tmax < 1:
        raise ValueError("tmax must be >= 1")
    if timetable.t < tmax:
        raise ValueError(f"timetable only reaches t={timetable.t}, need {tmax}")
    rows = []
    for n in range(1, timetable.max_card + 1):
        times = timetable.times(n)
        cut = bisect_right(times, tmax)
        if cut == 0:
            break
        rows.append(times[:cut].tolist())
    return StaircaseTableau(rows, tmax)


def transpose(tab) -> StaircaseTableau:
    rows = tab.rows
    if not rows:
        return StaircaseTableau((), getattr(tab, "tmax", 0))
    cols = [[r[j] for r in rows if len(r) > j] for j in range(len(rows[0]))]
    return StaircaseTableau(cols, getattr(tab, "tmax", 0))


def rsk_reversed(seq: Sequence[int], max_len: int = RSK_MAX_LEN) -> TableauPair:
    """Row-insertion RSK under the reversed order ``1 > 2 > 3 > ...``.

    Rows of ``P`` weakly decrease numerically; an inserted value bumps the
    leftmost entry numerically smaller than it.
    """
    if len(seq) > max_len:
        raise ValueError(f"sequence longer than {max_len}; raise max_len explicitly")
    # Negated entries turn the reversed order into the usual one.
    P: Rows = []
    Q: Rows = []
    for step, value in enumerate(seq, 1):
        if value < 1:
            raise ValueError("entries must be positive integers")
        x = -value
        row = 0
        while True:
            if row == len(P):
                P.append([x])
                Q.append([step])
                break
            r = P[row]
            j = bisect_right(r, x)
            if j == len(r):
                r.append(x)
                Q[row].append(step)
                break
            r[j], x = x, r[j]
            row += 1
    return TableauPair(tuple(tuple(-v for v in r) for r in P), tuple(tuple(r) for r in Q))


def columns(rows: Sequence[Sequence[int]]) -> Rows:
    if not rows:
        return []
    return [[r[j] for r in rows if len(r) > j] for j in range(len(rows[0]))]


def format_rows(rows: Iterable[Sequence[int]]) -> str:
    return "".join(",".join(map(str, r)) + "\n" for r in rows)


def write_rows(rows: Iterable[Sequence[int]], out: TextIO) -> None:
    out.write(format_rows(rows))


def read_rows(src: TextIO) -> Rows:
    return [[int(v) for v in line.split(",")] for line in src if line.strip()]
