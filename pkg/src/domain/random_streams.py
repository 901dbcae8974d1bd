"""Labelled, independent pseudo-random streams.

Every stochastic draw site asks for a stream by label. A stream is a PCG64DXSM
bit generator seeded from ``SeedSequence(seed, spawn_key=(label_key,))`` where
``label_key`` is the first 8 bytes of the BLAKE2b digest of the label. Streams
therefore depend only on (seed, label): adding a new draw site with a new label
never shifts the numbers drawn by existing sites.
"""

import hashlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def label_key(label: str) -> int:
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def make_generator(seed: int, label: str) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed & SEED_MASK, spawn_key=(label_key(label),))
    return np.random.Generator(np.random.PCG64DXSM(sequence))


class RandomStreams:
    """Lazily created generators for one seed, one per label."""

    def __init__(self, seed: int) -> None:
        self.seed = seed & SEED_MASK
        self._streams: dict[str, np.random.Generator] = {}

    def stream(self, label: str) -> np.random.Generator:
        rng = self._streams.get(label)
        if rng is None:
            rng = make_generator(self.seed, label)
            self._streams[label] = rng
        return rng

    def chance(self, label: str, probability: float) -> bool:
        """Bernoulli draw; certain outcomes consume nothing from the stream."""
        if probability <= 0.0:
            return False
        if probability >= 1.0:
            return True
        return bool(self.stream(label).random() < probability)

    def uniform_index(self, label: str, n: int) -> int:
        if n <= 1:
            return 0
        return int(self.stream(label).integers(n))
