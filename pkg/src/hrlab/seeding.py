"""Deterministic RNG stream derivation.

Every stochastic routine in the package takes an explicit seed and derives
child streams as a pure function of (master entropy, index path).  The same
lineage therefore yields bit-identical draws no matter how work is chunked
across workers.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SeedLineage:
    """A master seed together with the spawn-key path of a child stream."""

    entropy: int
    key: tuple[int, ...] = ()

    def child(self, index: int) -> "SeedLineage":
        return SeedLineage(self.entropy, self.key + (int(index),))

    def sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.entropy, spawn_key=self.key)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.sequence()))


def as_lineage(seed) -> SeedLineage:
    """Coerce an int or SeedLineage into a SeedLineage."""
    if isinstance(seed, SeedLineage):
        return seed
    return SeedLineage(int(seed))
