"""Insertion schedules: the map from view count ``k`` to position ``p_k``."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from . import rng

KINDS = ("slow", "recap", "constant", "affine", "power", "table", "uniform", "poisson")
RANDOM_KINDS = ("uniform", "poisson")


class ScheduleError(ValueError):
    """Malformed schedule descriptor or a position the schedule cannot supply."""


def _positive_int(params: Dict[str, Any], name: str, minimum: int = 1) -> int:
    value = params.get(name)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScheduleError(f"parameter {name!r} must be an integer, got {value!r}")
    if value < minimum:
        raise ScheduleError(f"parameter {name!r} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Schedule:
    """An insertion sequence ``(p_k)``.

    Deterministic kinds depend on ``k`` only.  ``uniform`` draws ``p_k``
    uniformly from ``[1, 2k+1]`` and ``poisson`` from Poisson(``k``) with
    zero mapped to 1; both are pure functions of ``(seed, draw)`` where the
    engine passes the clock time as ``draw``.
    """

    kind: str
    params: Tuple[Tuple[str, Any], ...] = ()
    seed: Optional[int] = None
    _cache: List[int] = field(default_factory=lambda: [0], init=False, repr=False,
                              compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ScheduleError(f"unknown schedule kind {self.kind!r}")
        p = dict(self.params)
        if self.kind == "constant":
            _positive_int(p, "c")
        elif self.kind == "affine":
            a = _positive_int(p, "a", minimum=0)
            b = p.get("b")
            if isinstance(b, bool) or not isinstance(b, int) or a + b < 1:
                raise ScheduleError("affine schedule needs integer b with a + b >= 1")
        elif self.kind == "power":
            _positive_int(p, "b")
        elif self.kind == "table":
            values = p.get("values")
            if not values or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 1
                                     for v in values):
                raise ScheduleError("table schedule needs a non-empty list of positive integers")
            if p.get("extend", "repeat-last") not in ("repeat-last", "error"):
                raise ScheduleError("table extend must be 'repeat-last' or 'error'")
        elif self.kind in RANDOM_KINDS:
            if self.seed is None:
                object.__setattr__(self, "seed", 0)
            elif isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
                raise ScheduleError("seed must be a non-negative integer")

    # -- evaluation --------------------------------------------------------
    @property
    def is_random(self) -> bool:
        return self.kind in RANDOM_KINDS

    def _value(self, k: int) -> int:
        p = dict(self.params)
        kind = self.kind
        if kind == "slow":
            return k + 1
        if kind == "recap":
            return 2 ** k
        if kind == "constant":
            return p["c"]
        if kind == "affine":
            return p["a"] * k + p["b"]
        if kind == "power":
            return p["b"] ** k
        values = p["values"]
        if k <= len(values):
            return values[k - 1]
        if p.get("extend", "repeat-last") == "error":
            raise ScheduleError(f"table schedule has no entry for k={k}")
        return values[-1]

    def __call__(self, k: int, draw: int = 0) -> int:
        """``p_k``; ``draw`` matters for random kinds only."""
        if k < 1:
            raise ScheduleError(f"view count must be >= 1, got {k}")
        if self.kind == "uniform":
            return 1 + rng.randbelow(self.seed, draw, 2 * k + 1)
        if self.kind == "poisson":
            return max(1, rng.poisson(self.seed, draw, k))
        return self._value(k)

    def table(self, kmax: int) -> List[int]:
        """Cached list ``[_, p_1, ..., p_kmax]`` for deterministic kinds.

        For ``table`` schedules with ``extend='error'`` the list stops at the
        last defined entry.
        """
        if self.is_random:
            raise ScheduleError("random schedules have no fixed table")
        cache = self._cache
        if kmax >= len(cache):
            if self.kind == "table" and dict(self.params).get("extend") == "error":
                kmax = min(kmax, len(dict(self.params)["values"]))
            cache.extend(self._value(k) for k in range(len(cache), kmax + 1))
        return cache

    # -- structure used by the analysis checks ----------------------------
    @property
    def bound(self) -> Optional[int]:
        """``max p_k`` when the schedule is provably bounded, else ``None``."""
        p = dict(self.params)
        if self.kind == "constant":
            return p["c"]
        if self.kind == "affine" and p["a"] == 0:
            return p["b"]
        if self.kind == "power" and p["b"] == 1:
            return 1
        if self.kind == "table" and p.get("extend", "repeat-last") == "repeat-last":
            return max(p["values"])
        return None

    @property
    def is_strictly_increasing(self) -> bool:
        p = dict(self.params)
        if self.kind in ("slow", "recap"):
            return True
        if self.kind == "affine":
            return p["a"] > 0
        if self.kind == "power":
            return p["b"] > 1
        return False

    def first_reaching(self, n: int, kmax: int = 1 << 20) -> Optional[int]:
        """``min{j : p_j >= n}`` or ``None`` if not reached by ``kmax``."""
        if self.is_random:
            raise ScheduleError("random schedules have no fixed table")
        p = dict(self.params)
        if self.kind == "slow":
            return max(1, n - 1)
        if self.kind == "recap":
            return max(1, (n - 1).bit_length())
        if self.kind == "affine" and p["a"] > 0:
            return max(1, -(-(n - p["b"]) // p["a"]))
        for j in range(1, kmax + 1):
            try:
                if self._value(j) >= n:
                    return j
            except ScheduleError:
                return None
        return None

    # -- serialization -----------------------------------------------------
    def descriptor(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {"kind": self.kind}
        d.update(self.params)
        if self.is_random:
            d["seed"] = self.seed
        return d

    def to_json(self) -> str:
        return json.dumps(self.descriptor(), sort_keys=True)


def schedule_slow() -> Schedule:
    return Schedule("slow")


def schedule_recap() -> Schedule:
    return Schedule("recap")


def schedule_constant(c: int) -> Schedule:
    return Schedule("constant", (("c", c),))


def schedule_affine(a: int, b: int) -> Schedule:
    return Schedule("affine", (("a", a), ("b", b)))


def schedule_power(b: int) -> Schedule:
    return Schedule("power", (("b", b),))


def schedule_table(values, extend: str = "repeat-last") -> Schedule:
    return Schedule("table", (("values", tuple(values)), ("extend", extend)))


def random_schedule(kind: str, seed: int = 0) -> Schedule:
    if kind not in RANDOM_KINDS:
        raise ScheduleError(f"random schedule kind must be one of {RANDOM_KINDS}")
    return Schedule(kind, seed=seed)


_PARAM_NAMES = {
    "slow": (), "recap": (), "uniform": (), "poisson": (),
    "constant": ("c",), "affine": ("a", "b"), "power": ("b",),
    "table": ("values", "extend"),
}


def schedule_from_spec(spec: Any) -> Schedule:
    """Build a schedule from a descriptor.

    Accepts a dict such as ``{"kind": "affine", "a": 3, "b": 1}``, its JSON
    text, or the shorthand ``kind[:arg[:arg]]`` (``constant:5``,
    ``affine:3:1``, ``power:2``, ``uniform:7`` where the argument is the
    seed, ``table:1,2,3``).
    """
    if isinstance(spec, Schedule):
        return spec
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("{"):
            try:
                spec = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ScheduleError(f"invalid schedule JSON: {exc}") from None
        else:
            return _from_shorthand(text)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ScheduleError(f"schedule descriptor must be an object with 'kind': {spec!r}")
    kind = spec["kind"]
    if kind not in KINDS:
        raise ScheduleError(f"unknown schedule kind {kind!r}")
    allowed = set(_PARAM_NAMES[kind]) | {"kind", "seed"}
    extra = set(spec) - allowed
    if extra:
        raise ScheduleError(f"unexpected keys for {kind!r}: {sorted(extra)}")
    seed = spec.get("seed")
    if kind not in RANDOM_KINDS and seed is not None:
        raise ScheduleError(f"{kind!r} schedules take no seed")
    params = []
    for name in _PARAM_NAMES[kind]:
        if name in spec:
            value = spec[name]
            if name == "values":
                if not isinstance(value, list):
                    raise ScheduleError("table values must be a list")
                value = tuple(value)
            params.append((name, value))
        elif name != "extend":
            raise ScheduleError(f"missing parameter {name!r} for {kind!r}")
    if kind == "table" and "extend" not in spec:
        params.append(("extend", "repeat-last"))
    return Schedule(kind, tuple(params), seed)


def _from_shorthand(text: str) -> Schedule:
    kind, _, rest = text.partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind in ("slow", "recap") and not args:
            return Schedule(kind)
        if kind == "constant" and len(args) == 1:
            return schedule_constant(int(args[0]))
        if kind == "affine" and len(args) == 2:
            return schedule_affine(int(args[0]), int(args[1]))
        if kind == "power" and len(args) == 1:
            return schedule_power(int(args[0]))
        if kind == "table" and len(args) in (1, 2):
            values = [int(v) for v in args[0].split(",")]
            return schedule_table(values, args[1] if len(args) == 2 else "repeat-last")
        if kind in RANDOM_KINDS and len(args) <= 1:
            return random_schedule(kind, int(args[0]) if args else 0)
    except ValueError as exc:
        if isinstance(exc, ScheduleError):
            raise
        raise ScheduleError(f"bad schedule argument in {text!r}: {exc}") from None
    raise ScheduleError(f"cannot parse schedule {text!r}")
