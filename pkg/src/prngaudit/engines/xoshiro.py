"""The xorshift/xoroshiro/xoshiro family and SplitMix64.

Ports of the public-domain reference implementations. The *_engine
variants expose the underlying linear transition with an unscrambled
(linear) output word, for structural analysis.
"""

from __future__ import annotations

import numba
import numpy as np

from .base import GOLDEN, Generator, SeedSpec

U64 = np.uint64


@numba.njit(numba.uint64(numba.uint64, numba.uint64), cache=True, inline="always")
def _rotl(x, k):
    return (x << k) | (x >> (U64(64) - k))


@numba.njit(cache=True, nogil=True)
def _xorshift128_fill(s, out, scramble):
    for k in range(out.size):
        s1 = s[0]
        s0 = s[1]
        res = s0 + s1
        s[0] = s0
        s1 ^= s1 << U64(23)
        s1 = s1 ^ s0 ^ (s1 >> U64(18)) ^ (s0 >> U64(5))
        s[1] = s1
        out[k] = res if scramble else s1
    return 0


@numba.njit(cache=True, nogil=True)
def _xoroshiro128pp_fill(s, out):
    for k in range(out.size):
        s0 = s[0]
        s1 = s[1]
        out[k] = _rotl(s0 + s1, U64(17)) + s0
        s1 ^= s0
        s[0] = _rotl(s0, U64(49)) ^ s1 ^ (s1 << U64(21))
        s[1] = _rotl(s1, U64(28))
    return 0


@numba.njit(cache=True, nogil=True)
def _xoroshiro128_engine_fill(s, out):
    # plain linear engine (a, b, c) = (24, 16, 37); output is s0 untouched
    for k in range(out.size):
        s0 = s[0]
        s1 = s[1]
        out[k] = s0
        s1 ^= s0
        s[0] = _rotl(s0, U64(24)) ^ s1 ^ (s1 << U64(16))
        s[1] = _rotl(s1, U64(37))
    return 0


@numba.njit(cache=True, nogil=True)
def _xoshiro256_fill(s, out, plusplus):
    for k in range(out.size):
        if plusplus:
            out[k] = _rotl(s[0] + s[3], U64(23)) + s[0]
        else:
            out[k] = s[0] + s[3]
        t = s[1] << U64(17)
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], U64(45))
    return 0


@numba.njit(cache=True, nogil=True)
def _splitmix64_fill(s, out):
    for k in range(out.size):
        s[0] += U64(GOLDEN)
        z = s[0]
        z = (z ^ (z >> U64(30))) * U64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> U64(27))) * U64(0x94D049BB133111EB)
        out[k] = z ^ (z >> U64(31))
    return 0


class _WordsBase(Generator):
    """Engines whose state is a flat array of 64-bit words."""

    word_width = 64
    _n_state_words = 0

    def _seed_state(self, spec: SeedSpec) -> None:
        s = np.array(spec.expand(self._n_state_words), dtype=np.uint64)
        if self.declared_linear and not s.any():
            s[0] = 1
        self._s = s

    def get_state(self) -> int:
        val = 0
        for j in range(self._n_state_words):
            val |= int(self._s[j]) << (64 * j)
        return val

    def set_state(self, bits: int) -> None:
        s = np.zeros(self._n_state_words, dtype=np.uint64)
        for j in range(self._n_state_words):
            s[j] = (bits >> (64 * j)) & 0xFFFFFFFFFFFFFFFF
        self._s = s


class Xorshift128Plus(_WordsBase):
    name = "xorshift128plus"
    state_bits = 128
    declared_linear = False  # additive scrambler
    _n_state_words = 2

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _xorshift128_fill(self._s, out, True)
        return out


class Xorshift128Engine(_WordsBase):
    name = "xorshift128_engine"
    state_bits = 128
    declared_linear = True
    _n_state_words = 2

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _xorshift128_fill(self._s, out, False)
        return out


class Xoroshiro128PlusPlus(_WordsBase):
    name = "xoroshiro128plusplus"
    state_bits = 128
    declared_linear = False  # strong scrambler
    _n_state_words = 2

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _xoroshiro128pp_fill(self._s, out)
        return out


class Xoroshiro128Engine(_WordsBase):
    name = "xoroshiro128_engine"
    state_bits = 128
    declared_linear = True
    _n_state_words = 2

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _xoroshiro128_engine_fill(self._s, out)
        return out


class Xoshiro256PlusPlus(_WordsBase):
    name = "xoshiro256plusplus"
    state_bits = 256
    declared_linear = False
    _n_state_words = 4

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _xoshiro256_fill(self._s, out, True)
        return out


class Xoshiro256Plus(_WordsBase):
    name = "xoshiro256plus"
    state_bits = 256
    declared_linear = False
    _n_state_words = 4

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _xoshiro256_fill(self._s, out, False)
        return out


class SplitMix64(_WordsBase):
    name = "splitmix64"
    state_bits = 64
    declared_linear = False
    _n_state_words = 1

    def _seed_state(self, spec: SeedSpec) -> None:
        # the seed IS the state: splitmix64 is the root of the seeding tree
        self._s = np.array([spec.seed64()], dtype=np.uint64)

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _splitmix64_fill(self._s, out)
        return out
