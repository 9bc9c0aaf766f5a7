"""Counter-based random numbers that are portable across platforms.

Every value is a pure function of ``(seed, draw, lane)``:

    word(seed, draw, lane) = mix(mix(mix(seed) + draw) + lane)

where ``mix`` is the SplitMix64 finalizer and additions wrap modulo 2**64.
``draw`` identifies the random event (for schedules: the clock time of the
viewing being reinserted) and ``lane`` enumerates the words consumed by a
single event (rejection sampling may need several).  Because nothing is
stateful, any draw can be replayed in isolation and parallel runs share no
generator.

Doubles are built from the top 53 bits of a word.  Poisson variates use
multiplication of uniforms for small means and Hörmann's PTRS transformed
rejection otherwise; both only need IEEE arithmetic plus ``log``/``lgamma``.
"""
from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def word(seed: int, draw: int, lane: int = 0) -> int:
    """A 64-bit word determined by ``(seed, draw, lane)``."""
    h = splitmix64(seed & MASK64)
    h = splitmix64((h + draw) & MASK64)
    return splitmix64((h + lane) & MASK64)


def uniform(seed: int, draw: int, lane: int = 0) -> float:
    """A double in ``[0, 1)``."""
    return (word(seed, draw, lane) >> 11) * (1.0 / (1 << 53))


def randbelow(seed: int, draw: int, n: int) -> int:
    """Unbiased integer in ``[0, n)`` by rejection over successive lanes."""
    if n <= 0:
        raise ValueError("n must be positive")
    limit = (1 << 64) - ((1 << 64) % n)
    lane = 0
    while True:
        w = word(seed, draw, lane)
        if w < limit:
            return w % n
        lane += 1


def poisson(seed: int, draw: int, lam: float) -> int:
    """Poisson variate with mean ``lam``."""
    if lam < 0:
        raise ValueError("mean must be non-negative")
    if lam == 0:
        return 0
    lane = 0
    if lam < 10:
        limit = math.exp(-lam)
        k = 0
        prod = uniform(seed, draw, lane)
        while prod > limit:
            k += 1
            lane += 1
            prod *= uniform(seed, draw, lane)
        return k

    slam = math.sqrt(lam)
    loglam = math.log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    invalpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2)
    while True:
        U = uniform(seed, draw, lane) - 0.5
        V = uniform(seed, draw, lane + 1)
        lane += 2
        us = 0.5 - abs(U)
        k = math.floor((2 * a / us + b) * U + lam + 0.43)
        if us >= 0.07 and V <= vr:
            return k
        if k < 0 or (us < 0.013 and V > us):
            continue
        if (math.log(V) + math.log(invalpha) - math.log(a / (us * us) + b)
                <= -lam + k * loglam - math.lgamma(k + 1)):
            return k
