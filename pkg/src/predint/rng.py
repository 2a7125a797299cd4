"""Splittable, counter-based random streams.

Each ``Rng`` is keyed by ``(seed, stream_id)`` and backed by a Philox4x64
generator, so replicate ``r`` of a study always reads the same numbers no
matter which worker thread runs it or in what order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass
class Rng:
    seed: int = 0
    stream_id: int = 0
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not (0 <= self.seed <= _MASK64 and 0 <= self.stream_id <= _MASK64):
            raise ValueError("seed and stream_id must be unsigned 64-bit integers")
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def substream(self, stream_id: int) -> "Rng":
        return Rng(self.seed, stream_id)

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def uniform(self) -> float:
        return float(self._gen.random())

    def uniforms(self, size: int) -> np.ndarray:
        return self._gen.random(size)

    def normal(self, mu: float = 0.0, sigma: float = 1.0, size: int | None = None):
        return self._gen.normal(mu, sigma, size)
