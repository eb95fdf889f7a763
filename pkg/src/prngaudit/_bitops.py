"""Packed-bit primitives shared by the GF(2) and generator modules.

A bit row is a numpy uint64 array: logical bit j lives in word j // 64 at
position j % 64 (LSB-first). Padding bits past the logical width are zero.
"""

from __future__ import annotations

import numba
import numpy as np

U64 = np.uint64
_ONE = U64(1)


def n_words(n_bits: int) -> int:
    return (n_bits + 63) >> 6


@numba.njit(numba.uint64(numba.uint64), cache=True, inline="always")
def popcount64(x):
    x = x - ((x >> U64(1)) & U64(0x5555555555555555))
    x = (x & U64(0x3333333333333333)) + ((x >> U64(2)) & U64(0x3333333333333333))
    x = (x + (x >> U64(4))) & U64(0x0F0F0F0F0F0F0F0F)
    return (x * U64(0x0101010101010101)) >> U64(56)


@numba.njit(numba.uint64(numba.uint64), cache=True, inline="always")
def bitrev64(x):
    x = ((x >> U64(1)) & U64(0x5555555555555555)) | ((x & U64(0x5555555555555555)) << U64(1))
    x = ((x >> U64(2)) & U64(0x3333333333333333)) | ((x & U64(0x3333333333333333)) << U64(2))
    x = ((x >> U64(4)) & U64(0x0F0F0F0F0F0F0F0F)) | ((x & U64(0x0F0F0F0F0F0F0F0F)) << U64(4))
    x = ((x >> U64(8)) & U64(0x00FF00FF00FF00FF)) | ((x & U64(0x00FF00FF00FF00FF)) << U64(8))
    x = ((x >> U64(16)) & U64(0x0000FFFF0000FFFF)) | ((x & U64(0x0000FFFF0000FFFF)) << U64(16))
    return (x >> U64(32)) | (x << U64(32))


def reverse_word_bits(x: int, width: int) -> int:
    """Reverse the low `width` bits of x (pure-Python scalar)."""
    r = 0
    for _ in range(width):
        r = (r << 1) | (x & 1)
        x >>= 1
    return r


@numba.njit(cache=True, nogil=True)
def pack_rows(dense, out):
    """Pack a 0/1 uint8 matrix into LSB-first uint64 rows."""
    n_rows, n_cols = dense.shape
    for i in range(n_rows):
        for j in range(n_cols):
            if dense[i, j]:
                out[i, j >> 6] |= _ONE << U64(j & 63)


@numba.njit(cache=True, nogil=True)
def unpack_rows(words, n_cols, out):
    """Expand LSB-first uint64 rows back into a 0/1 uint8 matrix."""
    n_rows = words.shape[0]
    for i in range(n_rows):
        for j in range(n_cols):
            out[i, j] = (words[i, j >> 6] >> U64(j & 63)) & _ONE


@numba.njit(cache=True, nogil=True)
def pack_stream_rows(stream, width, n_cols, out):
    """Fill packed rows from a word stream, each word consumed MSB-first.

    stream: uint64 words carrying `width` significant bits each. Bits are
    taken most-significant first and written row-major into an
    out.shape[0] x n_cols matrix.
    """
    n_rows = out.shape[0]
    k = 0  # global bit index
    for i in range(n_rows):
        for j in range(n_cols):
            w = stream[k // width]
            bit = (w >> U64(width - 1 - (k % width))) & _ONE
            if bit:
                out[i, j >> 6] |= _ONE << U64(j & 63)
            k += 1


@numba.njit(cache=True, nogil=True)
def pack_bit_matrix(bits, out):
    """Pack a row-major 0/1 uint8 vector of length n_rows*n_cols into rows."""
    n_rows = out.shape[0]
    n_cols = bits.size // n_rows
    k = 0
    for i in range(n_rows):
        for j in range(n_cols):
            if bits[k]:
                out[i, j >> 6] |= _ONE << U64(j & 63)
            k += 1


def pack_int(value: int, nbits: int) -> np.ndarray:
    """Packed row from a Python int (bit i of value -> logical bit i)."""
    out = np.zeros(n_words(nbits), dtype=np.uint64)
    mask = (1 << 64) - 1
    for w in range(out.size):
        out[w] = (value >> (64 * w)) & mask
    return out


def unpack_int(words: np.ndarray) -> int:
    """Inverse of pack_int."""
    value = 0
    for w in range(words.size - 1, -1, -1):
        value = (value << 64) | int(words[w])
    return value


_BYTE_REV = np.array([reverse_word_bits(b, 8) for b in range(256)], dtype=np.uint8)


def bit_reverse_words(arr: np.ndarray, width: int) -> np.ndarray:
    """Reverse the low `width` bits of every word in a uint64 array."""
    b = arr.astype("<u8").view(np.uint8).reshape(-1, 8)
    rev = _BYTE_REV[b][:, ::-1].copy().view("<u8").reshape(arr.shape).astype(np.uint64)
    return rev >> np.uint64(64 - width)
