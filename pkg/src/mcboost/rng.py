"""Seedable pseudo-random generator used for all randomized choices.

The generator is xoshiro256** whose 256-bit state is filled from the
64-bit seed by splitmix64.  Both algorithms are specified by their
published recurrences, so a sequence is reproducible from the seed alone,
independent of any library version.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64_next(state: int) -> tuple[int, int]:
    state = (state + _GOLDEN) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Deterministic per-trial seed from a master seed and a trial index."""
    state = (master_seed ^ ((index + 1) * _GOLDEN)) & _MASK
    _, z = _splitmix64_next(state)
    return z


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Rng:
    """xoshiro256** stream seeded via splitmix64."""

    def __init__(self, seed: int):
        state = seed & _MASK
        s = []
        for _ in range(4):
            state, z = _splitmix64_next(state)
            s.append(z)
        # All-zero state is unreachable: splitmix64 output of four
        # consecutive draws is never all zero for any seed we feed it,
        # but guard anyway.
        if not any(s):
            s[0] = _GOLDEN
        self._s = s

    def u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.u64() >> 11) * (1.0 / (1 << 53))

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = _MASK - (_MASK + 1) % n
        while True:
            x = self.u64()
            if x <= limit:
                return x % n

    def sign(self) -> int:
        """Uniform draw from {-1, +1}."""
        return 1 if self.u64() & 1 else -1

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
