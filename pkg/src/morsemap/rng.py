"""Seedable, portable random number generation.

The generator is SplitMix64 (Steele, Lea & Flood's splittable generator, the
one used to seed the xoshiro family). It is fixed here by algorithm, not by
library version, so datasets regenerate bit-identically on any platform:

    state += 0x9E3779B97F4A7C15                     (golden-ratio increment)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

All arithmetic is modulo 2^64.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """The SplitMix64 output mix of a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *indices: int) -> int:
    """Fold indices into a seed, one mixer round per index.

    Used for per-field / per-item streams: derive_seed(dataset_seed, i) gives
    field i its own independent 64-bit seed.
    """
    s = seed & MASK64
    for idx in indices:
        s = mix64((s + GOLDEN) ^ ((idx & MASK64) * 0xBF58476D1CE4E5B9 & MASK64))
    return s


class Rng:
    """SplitMix64 stream with uniform/integer/normal helpers."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive, rejection-sampled (no modulo bias)."""
        n = hi - lo + 1
        if n <= 0:
            raise ValueError("empty range")
        # largest multiple of n that fits in 2^64
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % n

    def normal(self) -> float:
        """Standard normal via Box-Muller; u1 shifted into (0,1] so log is safe."""
        u1 = ((self.next_u64() >> 11) + 1) * (1.0 / (1 << 53))
        u2 = (self.next_u64() >> 11) * (1.0 / (1 << 53))
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def random_array(self, n: int) -> np.ndarray:
        """n uniforms in [0,1), bit-identical to n successive random() calls.

        SplitMix64's state after k steps is seed + k*GOLDEN, so the whole
        block vectorizes; the scalar stream position advances by n.
        """
        steps = np.arange(1, n + 1, dtype=np.uint64) * np.uint64(GOLDEN)
        z = steps + np.uint64(self._state)
        self._state = (self._state + n * GOLDEN) & MASK64
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
        return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
