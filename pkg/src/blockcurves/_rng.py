"""Deterministic 64-bit RNG streams shared by every sampler.

Each Monte Carlo sample i draws from its own SplitMix64 stream keyed by
(master seed, i).  Both backends implement exactly this update, so results
are bit-identical between the pure and compiled paths and independent of
how samples are partitioned across threads.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def stream_state(seed: int, index: int) -> int:
    """Initial SplitMix64 state for sample `index` under `seed`."""
    return (seed + (index + 1) * _GAMMA) & _MASK64


def next_u64(state: int) -> tuple[int, int]:
    """One SplitMix64 step; returns (new_state, output)."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return state, z


class Stream:
    """Mutable wrapper over the stateless stream functions."""

    __slots__ = ("state",)

    def __init__(self, seed: int, index: int = 0):
        self.state = stream_state(seed, index)

    def u64(self) -> int:
        self.state, z = next_u64(self.state)
        return z

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection (exactly uniform)."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            z = self.u64()
            if z < limit:
                return z % bound
