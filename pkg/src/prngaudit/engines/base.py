"""Generator interface, seeding policy, and output transforms.

Every engine exposes its raw state as a Python int (bit i = state bit i),
produces words in bulk as uint64 numpy arrays, and can derive sibling
instances for per-sample streams.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from .._bitops import bit_reverse_words
from ..errors import DomainError

M64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_CHILD_SALT = 0xA3EC4E85B1C92D47


def mix64(z: int) -> int:
    """SplitMix64 output finalizer."""
    z &= M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return z ^ (z >> 31)


def splitmix_at(seed: int, k: int) -> int:
    """k-th output (0-based) of a SplitMix64 stream seeded with `seed`."""
    return mix64((seed + (k + 1) * GOLDEN) & M64)


@dataclass(frozen=True)
class SeedSpec:
    """Reproducibility contract: master seed plus a per-instance stream index.

    Identical SeedSpec values always produce identical generator states.
    Stream 0 passes the master seed through untouched so canonical seedings
    (e.g. the Mersenne Twister default 5489) stay reachable; other streams
    are SplitMix64-derived.
    """

    master_seed: int
    stream: int = 0

    def seed64(self) -> int:
        if self.stream == 0:
            return self.master_seed & M64
        return splitmix_at(self.master_seed, self.stream - 1)

    def child(self, stream: int) -> "SeedSpec":
        return SeedSpec(mix64(self.seed64() ^ _CHILD_SALT), stream)

    def expand(self, count: int) -> list[int]:
        """SplitMix64 expansion of the seed into `count` state words."""
        s = self.seed64()
        return [splitmix_at(s, i) for i in range(count)]


def as_seed_spec(seed) -> SeedSpec:
    if isinstance(seed, SeedSpec):
        return seed
    return SeedSpec(int(seed) & M64)


class Generator:
    """Stateful word-output PRNG with inspectable raw state bits."""

    name: str = "generator"
    word_width: int = 64
    state_bits: int = 0
    declared_linear: bool = False

    def __init__(self, seed=0):
        self.seed_spec = as_seed_spec(seed)
        self._seed_state(self.seed_spec)

    # engines override these two
    def _seed_state(self, spec: SeedSpec) -> None:
        raise NotImplementedError

    def words(self, count: int) -> np.ndarray:
        """Advance `count` steps and return the outputs as uint64."""
        raise NotImplementedError

    def get_state(self) -> int:
        raise NotImplementedError

    def set_state(self, bits: int) -> None:
        raise NotImplementedError

    # shared surface
    @property
    def algorithm(self) -> str:
        return self.name

    def next_word(self) -> int:
        return int(self.words(1)[0])

    def doubles(self, count: int) -> np.ndarray:
        """count values k / 2**53 built from the upper 53 bits of output.

        32-bit generators combine two consecutive words, first word in the
        high half.
        """
        if self.word_width == 64:
            w = self.words(count)
        elif self.word_width == 32:
            raw = self.words(2 * count)
            w = (raw[0::2] << np.uint64(32)) | raw[1::2]
        else:
            raise DomainError(f"doubles need 32- or 64-bit words, have {self.word_width}")
        return (w >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def next_double(self) -> float:
        return float(self.doubles(1)[0])

    def spawn(self, stream: int) -> "Generator":
        """Sibling generator on a derived stream (per-sample reproducibility)."""
        return type(self)(self.seed_spec.child(stream))

    def clone(self) -> "Generator":
        return copy.deepcopy(self)

    def set_low_weight_state(self, bit_position: int) -> None:
        """Set the state to the unit vector with only `bit_position` set."""
        if not 0 <= bit_position < self.state_bits:
            raise DomainError(
                f"bit position {bit_position} outside state of {self.state_bits} bits"
            )
        self.set_state(1 << bit_position)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} w={self.word_width} n={self.state_bits}>"


class TransformWrapper(Generator):
    """Applies an output transform: identity, bit_reverse, or lowest_k_bits."""

    def __init__(self, inner: Generator, transform: str = "identity", k: int | None = None):
        if transform not in ("identity", "bit_reverse", "lowest_k_bits"):
            raise DomainError(f"unknown transform {transform!r}")
        if transform == "lowest_k_bits":
            if k is None or not 1 <= k <= inner.word_width:
                raise DomainError("lowest_k_bits needs 1 <= k <= inner word width")
        self.inner = inner
        self.transform = transform
        self.k = k
        self.name = f"{inner.name}+{transform}" + (f"({k})" if k is not None else "")
        self.word_width = k if transform == "lowest_k_bits" else inner.word_width
        self.state_bits = inner.state_bits
        self.declared_linear = inner.declared_linear
        self.seed_spec = inner.seed_spec

    def words(self, count: int) -> np.ndarray:
        w = self.inner.words(count)
        if self.transform == "identity":
            return w
        if self.transform == "bit_reverse":
            return bit_reverse_words(w, self.inner.word_width)
        return w & np.uint64((1 << self.k) - 1)

    def get_state(self) -> int:
        return self.inner.get_state()

    def set_state(self, bits: int) -> None:
        self.inner.set_state(bits)

    def spawn(self, stream: int) -> "TransformWrapper":
        return TransformWrapper(self.inner.spawn(stream), self.transform, self.k)
