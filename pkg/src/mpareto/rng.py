"""SplitMix64, the generator named in every instance file.

The algorithm is fixed so fixtures can be regenerated bit-for-bit in any
language::

    state  = (state + 0x9E3779B97F4A7C15) mod 2**64
    z      = state
    z      = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z      = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

Bounded integers use rejection sampling: draws at or above
``2**64 - (2**64 mod span)`` are discarded, the rest reduced mod ``span``.
Bernoulli draws compare ``(output >> 11) / 2**53`` against the probability.
"""

from __future__ import annotations

ALGORITHM = "splitmix64"

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            z = self.next_u64()
            if z < limit:
                return lo + z % span

    def bernoulli(self, p: float) -> bool:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53)) < p

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
        return items
