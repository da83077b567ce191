"""Seeded instance generation.

Random numbers come from SplitMix64 (Steele, Lea and Flood, 2014), chosen
because it is a tiny, fully specified 64-bit generator that is easy to port,
so a seed reproduces the same instance in any language:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)            (all arithmetic mod 2**64)

An integer uniform on ``[lo, hi]`` is drawn by rejection: with
``span = hi - lo + 1``, 64-bit outputs ``x >= 2**64 - (2**64 % span)`` are
discarded and ``lo + x % span`` is returned.

Leveled rows are produced by drawing base values uniformly from ``[1, U]`` and
adding the smallest constant shift that makes the row leveled. Values are drawn
agent by agent, item by item; with ``identical_agents`` a single row is drawn
and copied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from levelfair.instance import Instance, InputError, is_leveled

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError(f"empty range [{lo}, {hi}]")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def permutation(self, n: int) -> list[int]:
        """Fisher-Yates shuffle of ``range(n)`` (swap index ``i`` with ``randint(0, i)``, ``i`` descending)."""
        items = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
        return items


def mix64(x: int) -> int:
    """The SplitMix64 output function applied to one word (a stateless hash)."""
    return SplitMix64((x - 0x9E3779B97F4A7C15) & MASK64).next_u64()


@dataclass(frozen=True)
class GenConfig:
    n: int
    m: int
    base_max: int = 10
    seed: int = 0
    identical_agents: bool = False

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1 or self.base_max < 1:
            raise InputError(f"GenConfig needs n, m, base_max >= 1, got {self.n}, {self.m}, {self.base_max}")
        if not 0 <= self.seed <= MASK64:
            raise InputError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


def leveling_shift(base: Sequence[int]) -> int:
    """Smallest ``c >= 0`` such that ``[u + c for u in base]`` is leveled.

    >>> leveling_shift([9, 1, 1])
    8
    """
    asc = sorted(base)
    m = len(asc)
    need = 0
    small = asc[0]
    large = 0
    for s in range(1, m):
        small += asc[s]
        large += asc[m - s]
        # shifted: small + (s+1)c > large + s*c  <=>  c > large - small
        need = max(need, large - small + 1)
    return need


def _draw_row(rng: SplitMix64, m: int, base_max: int) -> list[int]:
    return [rng.randint(1, base_max) for _ in range(m)]


def _rows(config: GenConfig, make_row) -> list[list[int]]:
    rng = SplitMix64(config.seed)
    if config.identical_agents:
        row = make_row(rng)
        return [list(row) for _ in range(config.n)]
    return [make_row(rng) for _ in range(config.n)]


def gen_leveled(config: GenConfig) -> Instance:
    """Random instance in which every agent's valuation is additive leveled."""

    def make_row(rng: SplitMix64) -> list[int]:
        base = _draw_row(rng, config.m, config.base_max)
        c = leveling_shift(base)
        return [u + c for u in base]

    return Instance(config.n, config.m, _rows(config, make_row))


def plant_violation(row: Sequence[int]) -> list[int]:
    """Raise the first largest item above the two smallest other items combined."""
    row = list(row)
    if len(row) < 3:
        raise InputError("a non-leveled additive row needs at least 3 items")
    top = max(range(len(row)), key=lambda g: (row[g], -g))
    others = sorted(v for g, v in enumerate(row) if g != top)
    row[top] = others[0] + others[1] + 1
    return row


def gen_nonleveled(config: GenConfig) -> Instance:
    """Random instance in which no agent's valuation is leveled."""
    if config.m < 3:
        raise InputError("non-leveled instances need m >= 3 (any two positive items are leveled)")

    def make_row(rng: SplitMix64) -> list[int]:
        base = _draw_row(rng, config.m, config.base_max)
        return plant_violation(base) if is_leveled(base) else base

    return Instance(config.n, config.m, _rows(config, make_row))


def counterexample_instance(a: int, b: int) -> Instance:
    """Three identical agents; items 0-2 are worth ``b``, items 3-9 are worth ``a``.

    Requires ``b > a`` and ``4a > 3b`` (which makes the valuation leveled).
    """
    if a < 1 or b < 1:
        raise InputError(f"a and b must be positive, got a={a}, b={b}")
    if not b > a:
        raise InputError(f"constraint b > a violated: b={b}, a={a}")
    if not 4 * a > 3 * b:
        raise InputError(f"constraint 4a > 3b violated: 4a = {4 * a} <= {3 * b} = 3b")
    row = [b] * 3 + [a] * 7
    return Instance(3, 10, [row, row, row])
