"""Small fixture generators used by tests and paradox demonstrations.

toy8 / toy16 are full-period Galois LFSRs emitting their whole state each
step; lfsr127 is the sparse Fibonacci register with feedback x^127 + x + 1
packed into 64-bit words; counter64 emits the step index; zero64 is the
degenerate all-zero stream.
"""

from __future__ import annotations

import numba
import numpy as np

from .._bitops import U64, bitrev64
from ..gf2 import BitMatrix
from .base import Generator, SeedSpec


@numba.njit(cache=True, nogil=True)
def _galois_fill(s, poly, width, out):
    # state' = state * x mod poly; emits the full state each step
    top = U64(1) << U64(width)
    for k in range(out.size):
        v = s[0] << U64(1)
        if v & top:
            v ^= poly
        s[0] = v
        out[k] = v
    return 0


class _GaloisLfsr(Generator):
    declared_linear = True
    _poly = 0

    def _seed_state(self, spec: SeedSpec) -> None:
        v = spec.expand(1)[0] & ((1 << self.state_bits) - 1)
        if v == 0:
            v = 1
        self._s = np.array([v], dtype=np.uint64)

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        _galois_fill(self._s, U64(self._poly), self.word_width, out)
        return out

    def get_state(self) -> int:
        return int(self._s[0])

    def set_state(self, bits: int) -> None:
        self._s = np.array([bits & ((1 << self.state_bits) - 1)], dtype=np.uint64)


class Toy8(_GaloisLfsr):
    """8-bit full-period LFSR; reduction polynomial x^8+x^4+x^3+x^2+1."""

    name = "toy8"
    word_width = 8
    state_bits = 8
    _poly = 0x11D


class Toy16(_GaloisLfsr):
    """16-bit full-period LFSR; reduction polynomial x^16+x^12+x^3+x+1."""

    name = "toy16"
    word_width = 16
    state_bits = 16
    _poly = 0x1100B


@numba.njit(cache=True, nogil=True)
def _lfsr127_fill(hi, lo, out):
    # s_n = s_{n-126} ^ s_{n-127}; state bit i holds s_{n-127+i}
    h = hi
    lw = lo
    for k in range(out.size):
        w1 = (lw >> U64(1)) | (h << U64(63))
        x = w1 ^ lw
        lw = h | (x << U64(63))
        h = x >> U64(1)
        out[k] = bitrev64(x)  # stream order: first bit in the MSB
    return h, lw


class Lfsr127(Generator):
    """Sparse Fibonacci LFSR (x^127 + x + 1) packed into 64-bit words."""

    name = "lfsr127"
    word_width = 64
    state_bits = 127
    declared_linear = True

    def _seed_state(self, spec: SeedSpec) -> None:
        w = spec.expand(2)
        v = ((w[0] << 64) | w[1]) & ((1 << 127) - 1)
        if v == 0:
            v = 1
        self.set_state(v)

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        hi, lo = _lfsr127_fill(U64(self._hi), U64(self._lo), out)
        self._hi, self._lo = int(hi), int(lo)
        return out

    def get_state(self) -> int:
        return (self._hi << 64) | self._lo

    def set_state(self, bits: int) -> None:
        bits &= (1 << 127) - 1
        self._hi = bits >> 64
        self._lo = bits & 0xFFFFFFFFFFFFFFFF


class Counter64(Generator):
    """Emits the step index; the classic birthday-spacings counterexample."""

    name = "counter64"
    word_width = 64
    state_bits = 64
    declared_linear = False  # increment is affine, not linear

    def _seed_state(self, spec: SeedSpec) -> None:
        self._c = spec.seed64()

    def words(self, count: int) -> np.ndarray:
        out = (self._c + np.arange(count, dtype=np.uint64)) & np.uint64(0xFFFFFFFFFFFFFFFF)
        self._c = (self._c + count) & 0xFFFFFFFFFFFFFFFF
        return out

    def get_state(self) -> int:
        return self._c

    def set_state(self, bits: int) -> None:
        self._c = bits & 0xFFFFFFFFFFFFFFFF


class Zero64(Generator):
    """Constant all-zero stream (degenerate screen fixture)."""

    name = "zero64"
    word_width = 64
    state_bits = 1
    declared_linear = True  # identity transition, zero output row

    def _seed_state(self, spec: SeedSpec) -> None:
        self._b = 1

    def words(self, count: int) -> np.ndarray:
        return np.zeros(count, dtype=np.uint64)

    def get_state(self) -> int:
        return self._b

    def set_state(self, bits: int) -> None:
        self._b = bits & 1


class MatrixToy(Generator):
    """Linear generator driven by an explicit transition matrix.

    Output is the low `word_width` bits of the state before the step. Meant
    for feeding small companion matrices through the analysis surface.
    """

    name = "matrix_toy"
    declared_linear = True

    def __init__(self, matrix: BitMatrix, word_width: int | None = None, seed=1):
        self._m = matrix
        self.state_bits = matrix.n_rows
        self.word_width = word_width or min(8, matrix.n_rows)
        self.name = f"matrix_toy{matrix.n_rows}"
        super().__init__(seed)

    def _seed_state(self, spec: SeedSpec) -> None:
        v = spec.expand((self.state_bits + 63) // 64)
        val = 0
        for i, w in enumerate(v):
            val |= w << (64 * i)
        val &= (1 << self.state_bits) - 1
        self._state = val if val else 1

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        for k in range(count):
            out[k] = self._state & ((1 << self.word_width) - 1)
            self._state = self._m.mul_vec(self._state)
        return out

    def get_state(self) -> int:
        return self._state

    def set_state(self, bits: int) -> None:
        self._state = bits & ((1 << self.state_bits) - 1)
