"""Mersenne Twister engines (32- and 64-bit variants).

State arrays hold the sliding recurrence window x_k .. x_{k+n-1} in a
circular buffer. The inspectable state is the 19937-bit vector that the
recurrence actually depends on: the masked top bits of the oldest word plus
all bits of the remaining words. The unused low bits of the oldest word
never influence any output, so they are not part of the logical state.
"""

from __future__ import annotations

import numba
import numpy as np

from .base import Generator, SeedSpec

U64 = np.uint64


@numba.njit(cache=True, nogil=True)
def _mt32_fill(mt, idx, out):
    for k in range(out.size):
        x = (mt[idx] & U64(0x80000000)) | (mt[(idx + 1) % 624] & U64(0x7FFFFFFF))
        xa = x >> U64(1)
        if x & U64(1):
            xa ^= U64(0x9908B0DF)
        y = mt[(idx + 397) % 624] ^ xa
        mt[idx] = y
        idx = (idx + 1) % 624
        y ^= y >> U64(11)
        y ^= (y << U64(7)) & U64(0x9D2C5680)
        y ^= (y << U64(15)) & U64(0xEFC60000)
        y ^= y >> U64(18)
        out[k] = y
    return idx


@numba.njit(cache=True, nogil=True)
def _mt64_fill(mt, idx, out):
    for k in range(out.size):
        x = (mt[idx] & U64(0xFFFFFFFF80000000)) | (mt[(idx + 1) % 312] & U64(0x7FFFFFFF))
        xa = x >> U64(1)
        if x & U64(1):
            xa ^= U64(0xB5026F5AA96619E9)
        y = mt[(idx + 156) % 312] ^ xa
        mt[idx] = y
        idx = (idx + 1) % 312
        y ^= (y >> U64(29)) & U64(0x5555555555555555)
        y ^= (y << U64(17)) & U64(0x71D67FFFEDA60000)
        y ^= (y << U64(37)) & U64(0xFFF7EEE000000000)
        y ^= y >> U64(43)
        out[k] = y
    return idx


class Mt19937(Generator):
    name = "mt19937"
    word_width = 32
    state_bits = 19937
    declared_linear = True

    _N = 624
    _WORD_MASK = 0xFFFFFFFF
    _TOP_MASK = 0x80000000  # recurrence uses only this bit of the oldest word
    _TOP_BITS = 1

    def _seed_state(self, spec: SeedSpec) -> None:
        self.seed_classic(spec.seed64() & self._WORD_MASK)

    def seed_classic(self, seed: int) -> None:
        """Canonical scalar seeding (init_genrand)."""
        n = self._N
        mt = np.zeros(n, dtype=np.uint64)
        mt[0] = seed & self._WORD_MASK
        for i in range(1, n):
            mt[i] = (1812433253 * (int(mt[i - 1]) ^ (int(mt[i - 1]) >> 30)) + i) & self._WORD_MASK
        self._mt = mt
        self._idx = 0

    def seed_by_array(self, key) -> None:
        """Canonical array seeding (init_by_array)."""
        self.seed_classic(19650218)
        mt = self._mt
        n = self._N
        i, j = 1, 0
        for _ in range(max(len(key), n)):
            mt[i] = ((int(mt[i]) ^ ((int(mt[i - 1]) ^ (int(mt[i - 1]) >> 30)) * 1664525)) + key[j] + j) & self._WORD_MASK
            i += 1
            j += 1
            if i >= n:
                mt[0] = mt[n - 1]
                i = 1
            if j >= len(key):
                j = 0
        for _ in range(n - 1):
            mt[i] = ((int(mt[i]) ^ ((int(mt[i - 1]) ^ (int(mt[i - 1]) >> 30)) * 1566083941)) - i) & self._WORD_MASK
            i += 1
            if i >= n:
                mt[0] = mt[n - 1]
                i = 1
        mt[0] = self._TOP_MASK

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        self._idx = _mt32_fill(self._mt, self._idx, out)
        return out

    def get_state(self) -> int:
        n, width, top = self._N, 32, self._TOP_BITS
        val = int(self._mt[self._idx]) >> (width - top)
        pos = top
        for j in range(1, n):
            val |= int(self._mt[(self._idx + j) % n]) << pos
            pos += width
        return val

    def set_state(self, bits: int) -> None:
        n, width, top = self._N, 32, self._TOP_BITS
        mt = np.zeros(n, dtype=np.uint64)
        mt[0] = (bits & ((1 << top) - 1)) << (width - top)
        pos = top
        mask = (1 << width) - 1
        for j in range(1, n):
            mt[j] = (bits >> pos) & mask
            pos += width
        self._mt = mt
        self._idx = 0


class Mt19937_64(Mt19937):
    name = "mt19937_64"
    word_width = 64
    state_bits = 19937
    declared_linear = True

    _N = 312
    _WORD_MASK = (1 << 64) - 1
    _TOP_MASK = 0xFFFFFFFF80000000
    _TOP_BITS = 33

    def _seed_state(self, spec: SeedSpec) -> None:
        self.seed_classic(spec.seed64())

    def seed_classic(self, seed: int) -> None:
        n = self._N
        mt = np.zeros(n, dtype=np.uint64)
        mt[0] = seed & self._WORD_MASK
        for i in range(1, n):
            mt[i] = (6364136223846793005 * (int(mt[i - 1]) ^ (int(mt[i - 1]) >> 62)) + i) & self._WORD_MASK
        self._mt = mt
        self._idx = 0

    def seed_by_array(self, key) -> None:
        self.seed_classic(19650218)
        mt = self._mt
        n = self._N
        i, j = 1, 0
        for _ in range(max(len(key), n)):
            mt[i] = ((int(mt[i]) ^ ((int(mt[i - 1]) ^ (int(mt[i - 1]) >> 62)) * 3935559000370003845)) + key[j] + j) & self._WORD_MASK
            i += 1
            j += 1
            if i >= n:
                mt[0] = mt[n - 1]
                i = 1
            if j >= len(key):
                j = 0
        for _ in range(n - 1):
            mt[i] = ((int(mt[i]) ^ ((int(mt[i - 1]) ^ (int(mt[i - 1]) >> 62)) * 2862933555777941757)) - i) & self._WORD_MASK
            i += 1
            if i >= n:
                mt[0] = mt[n - 1]
                i = 1
        mt[0] = 1 << 63

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        self._idx = _mt64_fill(self._mt, self._idx, out)
        return out

    def get_state(self) -> int:
        n, width, top = self._N, 64, self._TOP_BITS
        val = int(self._mt[self._idx]) >> (width - top)
        pos = top
        for j in range(1, n):
            val |= int(self._mt[(self._idx + j) % n]) << pos
            pos += width
        return val

    def set_state(self, bits: int) -> None:
        n, width, top = self._N, 64, self._TOP_BITS
        mt = np.zeros(n, dtype=np.uint64)
        mt[0] = ((bits & ((1 << top) - 1)) << (width - top)) & self._WORD_MASK
        pos = top
        mask = (1 << width) - 1
        for j in range(1, n):
            mt[j] = (bits >> pos) & mask
            pos += width
        self._mt = mt
        self._idx = 0
