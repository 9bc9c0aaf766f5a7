"""Empirical checks of proved inequalities and soft probes of open ones.

Checks (``check_*``) return a :class:`CheckReport`; a violation of a proved
bound means the simulator is wrong.  Probes return a :class:`ProbeReport`
with the measured numbers and never fail.

Every function accepts an optional ``state`` so that one long simulation
can be shared between checks; the state is advanced as far as each check
needs.
"""
from __future__ import annotations

import csv
import io
import math
import random
import statistics
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .deck import DEFAULT_CAP, DeckCapacityError
from .engine import DEFAULT_BUDGET, GameState, StepBudgetExceeded
from .schedules import Schedule, ScheduleError, schedule_from_spec

ROOT2K_C0 = 2
CIRCLE_EPS_SCALE = 2.5


@dataclass
class Check:
    name: str
    params: str
    checked: int = 0
    violations: List[Any] = field(default_factory=list)
    witness: Any = None

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class CheckReport:
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> List[Tuple[str, Any]]:
        return [(c.name, v) for c in self.checks for v in c.violations]

    def add(self, name: str, params: str) -> Check:
        check = Check(name, params)
        self.checks.append(check)
        return check

    def merge(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.checks + other.checks, self.notes + other.notes)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status} {c.name} [{c.params}] checked={c.checked} violations={len(c.violations)}"
            if c.witness is not None:
                line += f" witness={c.witness}"
            lines.append(line)
            lines.extend(f"    violation: {v}" for v in c.violations[:10])
        lines.extend(f"note: {n}" for n in self.notes)
        lines.append("RESULT: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "params", "checked", "violations", "witness"])
        for c in self.checks:
            w.writerow([c.name, c.params, c.checked, len(c.violations),
                        "" if c.witness is None else c.witness])
        return buf.getvalue()


@dataclass
class ProbeReport:
    name: str
    params: str
    values: Dict[str, Any]

    def to_text(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in self.values.items())
        return f"PROBE {self.name} [{self.params}] {body}\n"


def _slow_state(state: Optional[GameState]) -> GameState:
    if state is None:
        return GameState("slow")
    if state.schedule.kind != "slow":
        raise ValueError("this check needs a slow-game state")
    return state


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


# -- slow game theorems ---------------------------------------------------

def check_slow_theorems(n_max: int, state: Optional[GameState] = None, *,
                        pairs: int = 10 ** 4, seed: int = 0,
                        budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Interleaving, quadratic bounds and pairwise count bounds, ``n <= n_max``.

    The interleaving lower bound is checked as ``T_1(n-1) + n - 1 <= T_n(1)``.
    ``(i, k)`` pairs for ``T_i(1+k) < T_1(i+k)`` use ``i >= 2`` and are
    sampled when there are more than ``pairs`` of them.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    state = _slow_state(state)
    state.run_until_seen(1, n_max, budget)
    tt = state.timetable
    T1 = [0] + tt.times(1)[:n_max].tolist()
    rep = CheckReport()

    c = rep.add("T1_upper", f"T_1(n) <= n^2-n+1, n<={n_max}")
    c_lo = rep.add("T1_lower", f"T_1(n) >= C(n+1,2), n<={n_max}")
    c_first = rep.add("Tn1_upper", f"T_n(1) <= (n-1)^2+1, n<={n_max}")
    c_int = rep.add("interleave", f"T_1(n-1)+n-1 <= T_n(1) < T_1(n), 2<=n<={n_max}")
    tightest = None
    for n in range(1, n_max + 1):
        c.checked += 1
        if T1[n] > n * n - n + 1:
            c.violations.append((n, T1[n]))
        c_lo.checked += 1
        if T1[n] < n * (n + 1) // 2:
            c_lo.violations.append((n, T1[n]))
        tn1 = tt.get(n, 1)
        c_first.checked += 1
        if tn1 is None or tn1 > (n - 1) ** 2 + 1:
            c_first.violations.append((n, tn1))
        if n >= 2:
            c_int.checked += 1
            if tn1 is None or not (T1[n - 1] + n - 1 <= tn1 < T1[n]):
                c_int.violations.append((n, T1[n - 1], tn1, T1[n]))
            elif tightest is None or tn1 - T1[n - 1] - (n - 1) < tightest[0]:
                tightest = (tn1 - T1[n - 1] - (n - 1), n)
    c.witness = f"max ratio T_1(n)/(n^2-n+1) = {max(T1[n] / (n * n - n + 1) for n in range(1, n_max + 1)):.4f}"
    c_int.witness = tightest and f"min slack {tightest[0]} at n={tightest[1]}"

    all_pairs = [(i, k) for i in range(2, n_max) for k in range(1, n_max - i + 1)]
    rnd = random.Random(seed)
    chosen = all_pairs if len(all_pairs) <= pairs else rnd.sample(all_pairs, pairs)
    c_cor = rep.add("shifted_interleave", f"T_i(1+k) < T_1(i+k), i>=2, i+k<={n_max}, {len(chosen)} pairs")
    for i, k in chosen:
        c_cor.checked += 1
        tik = tt.get(i, 1 + k)
        if tik is None or tik >= T1[i + k]:
            c_cor.violations.append((i, k, tik, T1[i + k]))

    c_after = rep.add("after_equal", f"|c_i - c_j| <= 1 after first tie, i<j<={n_max}")
    card_pairs = [(i, j) for i in range(1, n_max + 1) for j in range(i + 1, n_max + 1)]
    if len(card_pairs) > pairs:
        card_pairs = rnd.sample(card_pairs, pairs)
    for i, j in card_pairs:
        c_after.checked += 1
        bad = _after_tie_violation(tt.times(i), tt.times(j))
        if bad is not None:
            c_after.violations.append((i, j, bad))
    return rep


def _after_tie_violation(ti: Sequence[int], tj: Sequence[int]):
    """For ``i < j``: once ``c_i = c_j > 0``, ``c_i`` may lead by at most one.

    Returns the first offending level or ``None``.
    """
    # A tie at level k exists iff T_j(k) < T_i(k + 1).
    start = None
    for k in range(1, len(tj) + 1):
        if k >= len(ti) or tj[k - 1] < ti[k]:
            start = k
            break
    if start is None:
        return None
    # c_i reaching m + 2 before c_j reaches m + 1 would be a gap of two.
    for m in range(start, len(ti) - 1):
        if m < len(tj) and ti[m + 1] < tj[m]:
            return m
        if m >= len(tj):
            return m
    return None


def check_root2k(k_max: int, c0: int = ROOT2K_C0, state: Optional[GameState] = None,
                 budget: int = DEFAULT_BUDGET) -> CheckReport:
    """``T_k(l) < T_1(k+1)`` for ``l <= floor(sqrt(2k)) - c0``."""
    state = _slow_state(state)
    state.run_until_seen(1, k_max + 1, budget)
    tt = state.timetable
    rep = CheckReport()
    c = rep.add("root2k", f"T_k(l) < T_1(k+1), l <= floor(sqrt(2k))-{c0}, k<={k_max}")
    margin = None
    for k in range(1, k_max + 1):
        limit = tt[1, k + 1]
        row = tt.times(k)
        for ell in range(1, math.isqrt(2 * k) - c0 + 1):
            c.checked += 1
            if ell > len(row) or row[ell - 1] >= limit:
                c.violations.append((k, ell))
        reached = sum(1 for x in row if x < limit) - math.isqrt(2 * k)
        margin = reached if margin is None else min(margin, reached)
    c.witness = f"min over k of (max l) - floor(sqrt(2k)) = {margin}"
    return rep


def check_min_gap(k_max: int, state: Optional[GameState] = None,
                  budget: int = DEFAULT_BUDGET) -> CheckReport:
    """``T_k(i+1) - T_k(i) = i + 1`` whenever ``C(i+1, 2) < k``."""
    state = _slow_state(state)
    rep = CheckReport()
    c = rep.add("min_gap", f"T_k(i+1)-T_k(i) = i+1 when C(i+1,2) < k, k<={k_max}")
    tt = state.timetable
    for k in range(2, k_max + 1):
        i_max = 1
        while _binom2(i_max + 2) < k:
            i_max += 1
        state.run_until_seen(k, i_max + 1, budget)
        row = tt.times(k)
        for i in range(1, i_max + 1):
            c.checked += 1
            if row[i] - row[i - 1] != i + 1:
                c.violations.append((k, i, row[i] - row[i - 1]))
    return rep


# -- general schedules ----------------------------------------------------

def check_general(schedule, n_max: int, state: Optional[GameState] = None, *,
                  budget: int = DEFAULT_BUDGET, cap: int = DEFAULT_CAP,
                  bounded_steps: int = 10 ** 4, truncate: bool = False) -> CheckReport:
    """Bounds valid for arbitrary deterministic schedules, ``n <= n_max``.

    Strictly increasing schedules also get the interleaving bounds and
    ``T_1(n+1) <= 1 + n p_n``.  Bounded schedules are checked for the
    converse of perfect learning: no card beyond ``max p_k`` is ever seen
    in ``bounded_steps`` steps.

    With ``truncate=True`` a step-budget or materialization-cap stop ends
    the simulation early and every bound is checked over the data
    recorded so far; the reached range is noted in the report.
    """
    schedule = schedule_from_spec(schedule)
    if schedule.is_random:
        raise ScheduleError("theorem checks need a deterministic schedule")
    if state is None:
        state = GameState(schedule, cap=cap)
    rep = CheckReport()
    bound = schedule.bound
    if bound is not None:
        state.run_until_time(bounded_steps)
        c = rep.add("bounded_never_learns", f"no card > {bound} in {bounded_steps} steps")
        c.checked = state.t
        if state.timetable.max_card > bound:
            c.violations.append(state.timetable.max_card)
        c.witness = f"max card seen = {state.timetable.max_card}"
        return rep

    try:
        state.run_until_seen(1, n_max + 1, budget)
    except (StepBudgetExceeded, DeckCapacityError) as exc:
        if not truncate:
            raise
        rep.notes.append(f"simulation stopped at t={state.t}: {exc}")
    tt = state.timetable
    T1 = tt.times(1)
    horizon = state.t
    n_reached = min(n_max, len(T1) - 1)
    rep.notes.append(f"T_1 known through n={len(T1)}; increasing-schedule checks cover n<={n_reached}")
    p = lambda k: schedule(k)  # noqa: E731

    if schedule.is_strictly_increasing:
        c1 = rep.add("general_interleave", f"T_1(n)+p_n-1 <= T_(p_n)(1) < T_1(n+1), n<={n_reached}")
        c3 = rep.add("T1_step_bound", f"T_1(n+1) <= 1 + n*p_n, n<={n_reached}")
        for n in range(1, n_reached + 1):
            pn = p(n)
            tp = tt.get(pn, 1)
            c1.checked += 1
            if tp is None or not (T1[n - 1] + pn - 1 <= tp < T1[n]):
                c1.violations.append((n, T1[n - 1], tp, T1[n]))
            c3.checked += 1
            if T1[n] > 1 + n * pn:
                c3.violations.append((n, T1[n], 1 + n * pn))
        c2 = rep.add("general_shifted_interleave",
                     f"T_(p_(n-1))(1+k) < T_1(n+k), n+k<={len(T1)}")
        for n in range(2, len(T1) + 1):
            card = p(n - 1)
            row = tt.times(card)
            for k in range(0, len(T1) - n + 1):
                c2.checked += 1
                if k >= len(row) or row[k] >= T1[n + k - 1]:
                    c2.violations.append((n, k))

    c4 = rep.add("first_view_bound", "T_n(1) <= 1 + (n-1) min{j: p_j >= n}")
    n = 1
    while True:
        j = schedule.first_reaching(n)
        limit = None if j is None else 1 + (n - 1) * j
        tn1 = tt.get(n, 1)
        if tn1 is None:
            if limit is not None and limit <= horizon:
                c4.violations.append((n, None, limit))
            break
        c4.checked += 1
        if limit is not None and tn1 > limit:
            c4.violations.append((n, tn1, limit))
        n += 1

    c5 = rep.add("difference_bound", "T_i(n+1)-T_i(n) <= (p_n-1) n + 1")
    table = {}
    for i in range(1, tt.max_card + 1):
        row = tt.times(i)
        for k in range(1, len(row) + 1):
            if k not in table:
                table[k] = (p(k) - 1) * k + 1
            nxt = row[k] if k < len(row) else None
            if nxt is None:
                # T_i(k+1) > horizon, so the gap is at least horizon + 1 - T_i(k).
                if horizon - row[k - 1] >= table[k]:
                    c5.violations.append((i, k, None))
                continue
            c5.checked += 1
            if nxt - row[k - 1] > table[k]:
                c5.violations.append((i, k, nxt - row[k - 1]))
    return rep


# -- conjecture probes -----------------------------------------------------

def estimate_c(n_lo: int, n_hi: int, state: Optional[GameState] = None,
               budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """Statistics of ``T_1(n) / n^2`` over ``[n_lo, n_hi]``."""
    state = _slow_state(state)
    state.run_until_seen(1, n_hi, budget)
    T1 = state.timetable.times(1)
    ratios = [T1[n - 1] / (n * n) for n in range(n_lo, n_hi + 1)]
    return ProbeReport("estimate_c", f"n in [{n_lo}, {n_hi}]", {
        "min": min(ratios), "max": max(ratios), "mean": statistics.fmean(ratios),
        "last": ratios[-1],
    })


def gap_probe(i: int, n_max: int, state: Optional[GameState] = None,
              budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """``max_n (T_i(n+1) - T_i(n)) - 2n`` for ``n <= n_max``."""
    state = _slow_state(state)
    state.run_until_seen(i, n_max + 1, budget)
    row = state.timetable.times(i)
    margins = [(row[n] - row[n - 1]) - 2 * n for n in range(1, n_max + 1)]
    worst = max(range(len(margins)), key=margins.__getitem__)
    return ProbeReport("gap_probe", f"i={i}, n<={n_max}", {
        "margin": margins[worst], "at_n": worst + 1,
        "holds": margins[worst] <= 0,
    })


def stabilization_probe(i: int, budget: int = 10 ** 7,
                        state: Optional[GameState] = None) -> Optional[int]:
    """Least ``t`` with ``c_i(t) = c_1(t)``, or ``None`` within ``budget`` steps."""
    if i < 1:
        raise ValueError("cards are positive integers")
    if i == 1:
        return 1
    state = _slow_state(state)
    k = 1
    # The first tie happens at T_i(k) for the least k with T_i(k) < T_1(k+1).
    while True:
        try:
            ti = state.run_until_seen(i, k, max(0, budget - state.t))
            t1 = state.run_until_seen(1, k + 1, max(0, budget - state.t))
        except StepBudgetExceeded:
            return None
        if ti < t1:
            return ti
        k += 1


def stabilization_report(cards: Sequence[int], budget: int = 10 ** 7,
                         state: Optional[GameState] = None) -> ProbeReport:
    state = _slow_state(state)
    found = {i: stabilization_probe(i, budget, state) for i in cards}
    return ProbeReport("stabilization", f"cards {list(cards)}, budget {budget}",
                       {"first_tie": found, "all_found": all(v is not None for v in found.values())})


# -- rescaled point cloud -------------------------------------------------

@dataclass
class PointCloud:
    interval: Tuple[int, int]
    points: List[Tuple[int, int, int, float, float]]

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,k,T,x,y\n")
        buf.writelines(f"{n},{k},{T},{x:.10g},{y:.10g}\n" for n, k, T, x, y in self.points)
        return buf.getvalue()

    def to_svg(self, size: int = 800, extent: float = 2.5) -> str:
        scale = size / extent

        def px(x: float) -> str:
            return f"{x * scale:.2f}"

        def py(y: float) -> str:
            return f"{size - y * scale:.2f}"

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">',
            f'<rect width="{size}" height="{size}" fill="white"/>',
            f'<line x1="{px(0)}" y1="{py(1)}" x2="{px(1)}" y2="{py(0)}" stroke="blue" stroke-width="1"/>',
            f'<path d="M {px(math.sqrt(2))} {py(0)} A {px(math.sqrt(2))} {px(math.sqrt(2))} 0 0 0 '
            f'{px(0)} {py(math.sqrt(2))}" fill="none" stroke="red" stroke-width="1"/>',
        ]
        parts.extend(f'<rect x="{px(x)}" y="{py(y)}" width="1" height="1" fill="black"/>'
                     for _, _, _, x, y in self.points if x <= extent and y <= extent)
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def point_cloud(interval: Tuple[int, int], state: Optional[GameState] = None) -> PointCloud:
    """All ``(n, k)/sqrt(T_n(k))`` with ``T_n(k)`` in the closed ``interval``."""
    lo, hi = interval
    if not 1 <= lo <= hi:
        raise ValueError("interval must satisfy 1 <= lo <= hi")
    state = _slow_state(state) if state is None else state
    state.run_until_time(hi)
    pts = []
    for t, n, k in state.timetable.events(lo, hi):
        r = math.sqrt(t)
        pts.append((n, k, t, n / r, k / r))
    return PointCloud((lo, hi), pts)


def circle_threshold(epsilon: float) -> int:
    """``M`` from ``epsilon = 2.5 / sqrt(M / 2)``: circle bound applies for ``T >= M``."""
    return math.ceil(2 * (CIRCLE_EPS_SCALE / epsilon) ** 2)


def check_cloud_bounds(pc: PointCloud, epsilon: float,
                       threshold: Optional[int] = None) -> CheckReport:
    """``x + y > 1`` everywhere; ``x^2 + y^2 <= 2 + epsilon`` once ``T >= threshold``."""
    if threshold is None:
        threshold = circle_threshold(epsilon)
    rep = CheckReport()
    line = rep.add("above_line", f"x+y > 1, T in {list(pc.interval)}")
    circle = rep.add("inside_circle", f"x^2+y^2 <= {2 + epsilon:g} for T >= {threshold}")
    lo_sum = None
    hi_rad = None
    for n, k, T, x, y in pc.points:
        line.checked += 1
        # Exact integer form of x + y > 1.
        if (n + k) ** 2 <= T:
            line.violations.append((n, k, T))
        lo_sum = x + y if lo_sum is None else min(lo_sum, x + y)
        if T >= threshold:
            circle.checked += 1
            rad = x * x + y * y
            hi_rad = rad if hi_rad is None else max(hi_rad, rad)
            if (n * n + k * k) > (2 + epsilon) * T:
                circle.violations.append((n, k, T))
    line.witness = lo_sum and f"min x+y = {lo_sum:.6f}"
    circle.witness = hi_rad and f"max x^2+y^2 = {hi_rad:.6f}"
    return rep


def curve_intercept_probe(n_lo: int, n_hi: int, state: Optional[GameState] = None,
                          budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """``n / sqrt(T_n(1))`` over ``[n_lo, n_hi]``.

    If the rescaled cloud meets the x-axis at ``a`` then ``T_n(1) ~ n^2/a^2``;
    the report compares ``1/a^2`` with the slope of ``T_1(n) / n^2``.
    """
    state = _slow_state(state)
    state.run_until_seen(n_hi, 1, budget)
    tt = state.timetable
    ratios = [n / math.sqrt(tt[n, 1]) for n in range(n_lo, n_hi + 1)]
    a = statistics.fmean(ratios)
    values: Dict[str, Any] = {
        "min": min(ratios), "max": max(ratios), "band": max(ratios) - min(ratios),
        "mean": a, "implied_Tn1_over_n2": 1 / (a * a),
    }
    T1 = tt.times(1)
    if len(T1) >= n_hi:
        values["T1n_over_n2"] = T1[n_hi - 1] / n_hi ** 2
    return ProbeReport("curve_intercept", f"n in [{n_lo}, {n_hi}]", values)


def intercept_ratios(ns: Sequence[int], state: Optional[GameState] = None) -> List[float]:
    state = _slow_state(state)
    state.run_until_seen(max(ns), 1)
    return [n / math.sqrt(state.timetable[n, 1]) for n in ns]
