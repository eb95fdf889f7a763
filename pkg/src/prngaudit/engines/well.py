"""WELL512a and WELL1024a (published parameterizations, no tempering).

The circular buffer index is an implementation detail; the inspectable
state is the register in logical order starting at the current index, so
the state-to-state map is a fixed linear transformation.
"""

from __future__ import annotations

import numba
import numpy as np

from .base import Generator, SeedSpec

U64 = np.uint64
_M32 = U64(0xFFFFFFFF)


@numba.njit(cache=True, nogil=True)
def _well512_fill(s, idx, out):
    for k in range(out.size):
        z0 = s[(idx + 15) & 15]
        v0 = s[idx]
        vm1 = s[(idx + 13) & 15]
        vm2 = s[(idx + 9) & 15]
        z1 = (v0 ^ ((v0 << U64(16)) & _M32)) ^ (vm1 ^ ((vm1 << U64(15)) & _M32))
        z2 = vm2 ^ (vm2 >> U64(11))
        nv1 = z1 ^ z2
        s[idx] = nv1
        nv0 = (
            (z0 ^ ((z0 << U64(2)) & _M32))
            ^ (z1 ^ ((z1 << U64(18)) & _M32))
            ^ ((z2 << U64(28)) & _M32)
            ^ (nv1 ^ ((nv1 << U64(5)) & U64(0xDA442D24)))
        )
        idx = (idx + 15) & 15
        s[idx] = nv0
        out[k] = nv0
    return idx


@numba.njit(cache=True, nogil=True)
def _well1024_fill(s, idx, out):
    for k in range(out.size):
        z0 = s[(idx + 31) & 31]
        v0 = s[idx]
        vm1 = s[(idx + 3) & 31]
        vm2 = s[(idx + 24) & 31]
        vm3 = s[(idx + 10) & 31]
        z1 = v0 ^ (vm1 ^ (vm1 >> U64(8)))
        z2 = (vm2 ^ ((vm2 << U64(19)) & _M32)) ^ (vm3 ^ ((vm3 << U64(14)) & _M32))
        nv1 = z1 ^ z2
        s[idx] = nv1
        nv0 = (
            (z0 ^ ((z0 << U64(11)) & _M32))
            ^ (z1 ^ ((z1 << U64(7)) & _M32))
            ^ (z2 ^ ((z2 << U64(13)) & _M32))
        )
        idx = (idx + 31) & 31
        s[idx] = nv0
        out[k] = nv0
    return idx


class _WellBase(Generator):
    word_width = 32
    declared_linear = True
    _R = 0
    _fill = None

    def _seed_state(self, spec: SeedSpec) -> None:
        words = spec.expand(self._R)
        s = np.array([w & 0xFFFFFFFF for w in words], dtype=np.uint64)
        if not s.any():
            s[0] = 1  # linear engines must not start at the fixed point zero
        self._s = s
        self._idx = 0

    def words(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        self._idx = type(self)._fill(self._s, self._idx, out)
        return out

    def get_state(self) -> int:
        val = 0
        for j in range(self._R):
            val |= int(self._s[(self._idx + j) % self._R]) << (32 * j)
        return val

    def set_state(self, bits: int) -> None:
        s = np.zeros(self._R, dtype=np.uint64)
        for j in range(self._R):
            s[j] = (bits >> (32 * j)) & 0xFFFFFFFF
        self._s = s
        self._idx = 0


class Well512a(_WellBase):
    name = "well512a"
    state_bits = 512
    _R = 16
    _fill = staticmethod(_well512_fill)


class Well1024a(_WellBase):
    name = "well1024a"
    state_bits = 1024
    _R = 32
    _fill = staticmethod(_well1024_fill)
