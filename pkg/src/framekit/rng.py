"""Deterministic random number generation.

All stochastic behaviour in the toolkit flows from xoshiro256** seeded via
splitmix64. The algorithm is fixed (not delegated to a platform RNG) so that
identical seeds give identical results everywhere; the Gibbs sampler kernel
carries an inline copy of the same update, verified equal in tests.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_state(seed: int, n: int = 4) -> np.ndarray:
    """Expand a 64-bit seed into n words of generator state."""
    state = seed & _MASK64
    out = np.zeros(n, dtype=np.uint64)
    for i in range(n):
        state = (state + _SPLITMIX_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        out[i] = (z ^ (z >> 31)) & _MASK64
    return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256StarStar:
    """xoshiro256** generator over four 64-bit state words."""

    def __init__(self, seed: int):
        s = splitmix64_state(seed)
        self._s = [int(v) for v in s]

    @property
    def state(self) -> np.ndarray:
        return np.array(self._s, dtype=np.uint64)

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def next_float(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return int(self.next_float() * n)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]
