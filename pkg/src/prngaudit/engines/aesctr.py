"""AES-128 in counter mode: the nonlinear reference generator.

Portable software implementation (T-table based). The counter is a 128-bit
big-endian integer; each encrypted block yields two 64-bit words, high half
first. The inspectable state is counter | key << 128 | phase << 256, where
the phase bit records a pending low half-block.
"""

from __future__ import annotations

import numba
import numpy as np

from .base import Generator, SeedSpec
from ..errors import DomainError

U64 = np.uint64
_M128 = (1 << 128) - 1


def _build_sbox() -> np.ndarray:
    # multiplicative inverse in GF(2^8) mod x^8+x^4+x^3+x+1, then the
    # standard affine transform
    def gmul(a, b):
        r = 0
        for _ in range(8):
            if b & 1:
                r ^= a
            hi = a & 0x80
            a = (a << 1) & 0xFF
            if hi:
                a ^= 0x1B
            b >>= 1
        return r

    inv = [0] * 256
    for x in range(1, 256):
        for y in range(1, 256):
            if gmul(x, y) == 1:
                inv[x] = y
                break
    sbox = np.zeros(256, dtype=np.uint64)
    for x in range(256):
        b = inv[x]
        v = 0
        for i in range(8):
            bit = (
                (b >> i)
                ^ (b >> ((i + 4) % 8))
                ^ (b >> ((i + 5) % 8))
                ^ (b >> ((i + 6) % 8))
                ^ (b >> ((i + 7) % 8))
                ^ (0x63 >> i)
            ) & 1
            v |= bit << i
        sbox[x] = v
    return sbox


_SBOX = _build_sbox()


def _build_tables() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    def xtime(a):
        a <<= 1
        return (a ^ 0x1B) & 0xFF if a & 0x100 else a

    t0 = np.zeros(256, dtype=np.uint64)
    for x in range(256):
        s = int(_SBOX[x])
        s2 = xtime(s)
        s3 = s2 ^ s
        t0[x] = (s2 << 24) | (s << 16) | (s << 8) | s3
    def ror8(v):
        return ((v >> 8) | (v << 24)) & 0xFFFFFFFF
    t1 = np.array([ror8(int(v)) for v in t0], dtype=np.uint64)
    t2 = np.array([ror8(int(v)) for v in t1], dtype=np.uint64)
    t3 = np.array([ror8(int(v)) for v in t2], dtype=np.uint64)
    return t0, t1, t2, t3


_T0, _T1, _T2, _T3 = _build_tables()
_RCON = (0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36)


def expand_key(key: int) -> np.ndarray:
    """AES-128 key schedule; key is a 128-bit big-endian integer."""
    w = [0] * 44
    for i in range(4):
        w[i] = (key >> (96 - 32 * i)) & 0xFFFFFFFF
    for i in range(4, 44):
        t = w[i - 1]
        if i % 4 == 0:
            t = ((t << 8) | (t >> 24)) & 0xFFFFFFFF  # RotWord
            t = (
                (int(_SBOX[(t >> 24) & 0xFF]) << 24)
                | (int(_SBOX[(t >> 16) & 0xFF]) << 16)
                | (int(_SBOX[(t >> 8) & 0xFF]) << 8)
                | int(_SBOX[t & 0xFF])
            )
            t ^= _RCON[i // 4 - 1] << 24
        w[i] = w[i - 4] ^ t
    return np.array(w, dtype=np.uint64)


@numba.njit(cache=True, nogil=True)
def _encrypt_block(rk, hi, lo):
    m32 = U64(0xFFFFFFFF)
    s0 = (hi >> U64(32)) ^ rk[0]
    s1 = (hi & m32) ^ rk[1]
    s2 = (lo >> U64(32)) ^ rk[2]
    s3 = (lo & m32) ^ rk[3]
    for r in range(1, 10):
        t0 = _T0[(s0 >> U64(24)) & U64(0xFF)] ^ _T1[(s1 >> U64(16)) & U64(0xFF)] ^ _T2[(s2 >> U64(8)) & U64(0xFF)] ^ _T3[s3 & U64(0xFF)] ^ rk[4 * r]
        t1 = _T0[(s1 >> U64(24)) & U64(0xFF)] ^ _T1[(s2 >> U64(16)) & U64(0xFF)] ^ _T2[(s3 >> U64(8)) & U64(0xFF)] ^ _T3[s0 & U64(0xFF)] ^ rk[4 * r + 1]
        t2 = _T0[(s2 >> U64(24)) & U64(0xFF)] ^ _T1[(s3 >> U64(16)) & U64(0xFF)] ^ _T2[(s0 >> U64(8)) & U64(0xFF)] ^ _T3[s1 & U64(0xFF)] ^ rk[4 * r + 2]
        t3 = _T0[(s3 >> U64(24)) & U64(0xFF)] ^ _T1[(s0 >> U64(16)) & U64(0xFF)] ^ _T2[(s1 >> U64(8)) & U64(0xFF)] ^ _T3[s2 & U64(0xFF)] ^ rk[4 * r + 3]
        s0, s1, s2, s3 = t0, t1, t2, t3
    o0 = (
        (_SBOX[(s0 >> U64(24)) & U64(0xFF)] << U64(24))
        | (_SBOX[(s1 >> U64(16)) & U64(0xFF)] << U64(16))
        | (_SBOX[(s2 >> U64(8)) & U64(0xFF)] << U64(8))
        | _SBOX[s3 & U64(0xFF)]
    ) ^ rk[40]
    o1 = (
        (_SBOX[(s1 >> U64(24)) & U64(0xFF)] << U64(24))
        | (_SBOX[(s2 >> U64(16)) & U64(0xFF)] << U64(16))
        | (_SBOX[(s3 >> U64(8)) & U64(0xFF)] << U64(8))
        | _SBOX[s0 & U64(0xFF)]
    ) ^ rk[41]
    o2 = (
        (_SBOX[(s2 >> U64(24)) & U64(0xFF)] << U64(24))
        | (_SBOX[(s3 >> U64(16)) & U64(0xFF)] << U64(16))
        | (_SBOX[(s0 >> U64(8)) & U64(0xFF)] << U64(8))
        | _SBOX[s1 & U64(0xFF)]
    ) ^ rk[42]
    o3 = (
        (_SBOX[(s3 >> U64(24)) & U64(0xFF)] << U64(24))
        | (_SBOX[(s0 >> U64(16)) & U64(0xFF)] << U64(16))
        | (_SBOX[(s1 >> U64(8)) & U64(0xFF)] << U64(8))
        | _SBOX[s2 & U64(0xFF)]
    ) ^ rk[43]
    return (o0 << U64(32)) | o1, (o2 << U64(32)) | o3


@numba.njit(cache=True, nogil=True)
def _aes_ctr_fill(rk, hi, lo, phase, out):
    k = 0
    n = out.size
    if phase == 1 and k < n:
        _, w1 = _encrypt_block(rk, hi, lo)
        out[k] = w1
        k += 1
        phase = 0
        lo += U64(1)
        if lo == U64(0):
            hi += U64(1)
    while k < n:
        w0, w1 = _encrypt_block(rk, hi, lo)
        out[k] = w0
        k += 1
        if k < n:
            out[k] = w1
            k += 1
            lo += U64(1)
            if lo == U64(0):
                hi += U64(1)
        else:
            phase = 1
    return hi, lo, phase


class Aes128Ctr(Generator):
    name = "aes128ctr"
    word_width = 64
    state_bits = 256  # counter (bits 0..127) and key (bits 128..255)
    declared_linear = False

    def __init__(self, seed=0, *, key: int | None = None, counter: int | None = None):
        if key is not None or counter is not None:
            self.seed_spec = None
            self._set_key(key or 0)
            self._counter = (counter or 0) & _M128
            self._phase = 0
        else:
            super().__init__(seed)

    def _seed_state(self, spec: SeedSpec) -> None:
        w = spec.expand(4)
        self._set_key((w[0] << 64) | w[1])
        self._counter = ((w[2] << 64) | w[3]) & _M128
        self._phase = 0

    def _set_key(self, key: int) -> None:
        self._key = key & _M128
        self._rk = expand_key(self._key)

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        hi, lo, phase = _aes_ctr_fill(
            self._rk,
            U64(self._counter >> 64),
            U64(self._counter & 0xFFFFFFFFFFFFFFFF),
            self._phase,
            out,
        )
        self._counter = (int(hi) << 64) | int(lo)
        self._phase = int(phase)
        return out

    def get_state(self) -> int:
        return self._counter | (self._key << 128) | (self._phase << 256)

    def set_state(self, bits: int) -> None:
        self._counter = bits & _M128
        self._set_key((bits >> 128) & _M128)
        self._phase = (bits >> 256) & 1

    def set_low_weight_state(self, bit_position: int) -> None:
        # supported for counter/key bits; not meaningful for escape analysis
        # since any counter block encrypts to balanced-looking output
        if not 0 <= bit_position < self.state_bits:
            raise DomainError(
                f"bit position {bit_position} outside state of {self.state_bits} bits"
            )
        self.set_state(1 << bit_position)
