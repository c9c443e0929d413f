"""Seeded, portable pseudo-random numbers (xorshift64*).

Python integers make the 64-bit recurrence exactly reproducible on any
platform, which keeps generated problem instances, optimizer runs and
layouts bit-identical across machines and runs.
"""

from .errors import DomainError

_MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D
_TWO53 = float(1 << 53)


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def derive_seed(seed: int, *stream: int) -> int:
    """Mix a base seed with stream indices into an independent child seed."""
    x = _splitmix64(seed & _MASK)
    for word in stream:
        x = _splitmix64(x ^ (word & _MASK))
    return x


class Xorshift64Star:
    """xorshift64* generator; the raw seed is scrambled through splitmix64."""

    def __init__(self, seed: int):
        state = _splitmix64(seed & _MASK)
        if state == 0:
            state = _MULT  # the xorshift state must never be zero
        self._state = state

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK
        x ^= x >> 27
        self._state = x
        return (x * _MULT) & _MASK

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) / _TWO53

    def randrange(self, k: int) -> int:
        """Uniform integer in [0, k), rejection-sampled to avoid modulo bias."""
        if k <= 0:
            raise DomainError(f"randrange needs k >= 1, got {k}")
        limit = (_MASK + 1) - ((_MASK + 1) % k)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

    def choice(self, seq):
        return seq[self.randrange(len(seq))]
