"""Deterministic pseudo-random streams for sampled searches.

The generator is pinned so that sampled verdicts are reproducible
bit-for-bit across platforms and numpy versions:

* core step: xorshift64* (shift triple 12/25/27, multiplier
  0x2545F4914F6CDD1D), 64-bit wrapping arithmetic;
* lane seeding: lane ``i`` of a stream with master seed ``s`` starts from
  ``splitmix64(s + i)``, forced non-zero;
* a stream interleaves ``LANES`` (= 4096) lanes; outputs are consumed in
  step-major order (all lanes' step 0, then step 1, ...).

The lane layout exists so blocks of values can be produced with vectorized
numpy updates instead of a per-value Python loop; it is part of the
documented algorithm, not a tuning knob.
"""

from __future__ import annotations

import numpy as np

LANES = 4096

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_MULT = np.uint64(0x2545F4914F6CDD1D)
_SM_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One splitmix64 finalization step (used only to derive lane seeds)."""
    x = (x + _SM_GAMMA) & 0xFFFFFFFFFFFFFFFF
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    x ^= x >> 31
    return x


class XorShiftStream:
    """Lane-parallel xorshift64* stream with a fixed consumption order."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        lane_seeds = np.empty(LANES, dtype=np.uint64)
        for i in range(LANES):
            s = splitmix64((self.seed + i) & 0xFFFFFFFFFFFFFFFF)
            lane_seeds[i] = s if s != 0 else _SM_GAMMA
        self._state = lane_seeds
        self._buffer = np.empty(0, dtype=np.uint64)

    def _step(self) -> np.ndarray:
        s = self._state
        s ^= s >> np.uint64(12)
        s ^= (s << np.uint64(25)) & _MASK
        s ^= s >> np.uint64(27)
        self._state = s & _MASK
        return (self._state * _MULT) & _MASK

    def raw(self, count: int) -> np.ndarray:
        """Next ``count`` 64-bit outputs, in stream order."""
        chunks = [self._buffer]
        have = len(self._buffer)
        while have < count:
            block = self._step()
            chunks.append(block)
            have += len(block)
        flat = np.concatenate(chunks) if len(chunks) > 1 else chunks[0]
        self._buffer = flat[count:]
        return flat[:count]

    def integers(self, count: int, bound: int) -> np.ndarray:
        """Next ``count`` values reduced modulo ``bound`` (bound >= 1)."""
        return (self.raw(count) % np.uint64(bound)).astype(np.int64)
