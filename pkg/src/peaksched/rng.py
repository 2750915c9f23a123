"""Deterministic random number generation.

All randomness in peaksched flows through a SplitMix64 generator so that
results are reproducible across runs and platforms.  Seeds for sub-streams
(heuristic passes, benchmark scenarios) are derived with ``mix64``, a
SplitMix64-style avalanche hash over an integer tuple, so every sub-stream
is pinned by one master seed.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def mix64(*values: int) -> int:
    """Avalanche-hash an integer tuple to a 64-bit seed."""
    h = _GOLDEN
    for v in values:
        h = _finalize((h ^ (v & _MASK64)) * _MIX1 & _MASK64)
    return h


class SplitMix64:
    """SplitMix64 generator with rejection-free bounded integer draws.

    Bounded draws map one 64-bit output onto the span with a multiply-shift
    (``lo + (next64() * span) >> 64``), which is rejection-free and exact
    for the span sizes used here (spans are tiny relative to 2^64, so the
    bias is below 2^-50 and irrelevant).
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _finalize(self._state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + ((self.next64() * span) >> 64)

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform float in [lo, hi)."""
        return lo + (hi - lo) * (self.next64() / 2**64)
