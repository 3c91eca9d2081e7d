"""Seedable 64-bit generator used everywhere randomness is needed.

The generator is splitmix64: state advances by the 64-bit golden gamma and
each output is a murmur-style mix of the state.  It is ten lines of integer
arithmetic, so problem files and run records can be regenerated exactly from
a seed by any implementation in any language, which is the point here; no
statistical heroics are required at these sample sizes.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """Finalizing mix; bijective on 64-bit integers."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential splitmix64 stream seeded with an arbitrary integer."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def unit(self) -> float:
        """Uniform float strictly inside (0, 1).

        The top 53 bits select a bin and the result is the bin midpoint,
        so 0.0 and 1.0 are unreachable.
        """
        return (float(self.next_uint64() >> 11) + 0.5) * 2.0 ** -53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.unit()

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) without modulo bias."""
        if n <= 0:
            raise ValueError(f"bound must be positive, got {n}")
        # Rejection sampling: discard draws from the final partial block.
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            x = self.next_uint64()
            if x < limit:
                return x % n


def derive_seed(master: int, index: int) -> int:
    """Seed for the index-th child stream of a master seed.

    Equals the (index+1)-th raw output of SplitMix64(master), computed in
    closed form, so child streams are documented and reproducible.
    """
    if index < 0:
        raise ValueError(f"index must be nonnegative, got {index}")
    return mix64((master + (index + 1) * _GAMMA) & _MASK64)
