"""Structural probes for generators: linearity checks, transition matrices,
and per-bit minimal polynomials."""

from __future__ import annotations

import numpy as np

from ..gf2 import BitMatrix, Gf2Poly, berlekamp_massey
from ..errors import DomainError, LinearityError
from .base import Generator, SeedSpec, splitmix_at


def _random_state(g: Generator, salt: int, k: int) -> int:
    """Deterministic pseudo-random state for probe k, derived from the seed."""
    base = g.seed_spec.seed64() if g.seed_spec is not None else 0
    n = g.state_bits
    val = 0
    for i in range((n + 63) // 64):
        val |= splitmix_at(base ^ salt, k * 64 + i) << (64 * i)
    return val & ((1 << n) - 1)


def _stream_from(g: Generator, state: int, count: int) -> np.ndarray:
    g.set_state(state)
    return g.words(count)


def linearity_xor_check(g: Generator, trials: int = 100, steps: int = 64) -> bool:
    """True iff output streams satisfy stream(S xor S') == stream(S) xor stream(S').

    Probes `trials` random state pairs for `steps` outputs each. The
    generator's state is consumed by the probe.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    steps = max(64, steps)
    for t in range(trials):
        s1 = _random_state(g, 0x11C0DE, 2 * t)
        s2 = _random_state(g, 0x11C0DE, 2 * t + 1)
        a = _stream_from(g, s1, steps)
        b = _stream_from(g, s2, steps)
        c = _stream_from(g, s1 ^ s2, steps)
        if not np.array_equal(a ^ b, c):
            return False
    return True


def transition_matrix(g: Generator, verify_states: int = 100) -> BitMatrix:
    """n x n next-state matrix M with column i = next_state(e_i).

    Only meaningful for generators declared linear; the result is verified
    by checking state-step agreement on `verify_states` random states before
    it is returned.
    """
    if not g.declared_linear:
        raise LinearityError(f"{g.name} is not declared linear")
    n = g.state_bits
    cols = np.zeros((n, (n + 63) // 64), dtype=np.uint64)
    for i in range(n):
        g.set_state(1 << i)
        g.words(1)
        img = g.get_state()
        for w in range(cols.shape[1]):
            cols[i, w] = (img >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    # cols[i] is column i; transpose into row-packed form
    m = BitMatrix(cols, n, n).transpose()
    for k in range(verify_states):
        s = _random_state(g, 0x7A1157, k)
        g.set_state(s)
        g.words(1)
        stepped = g.get_state()
        predicted = m.mul_vec(s)
        if stepped != predicted:
            raise LinearityError(
                f"{g.name}: transition is not linear at probed state pair",
                state_a=s,
                state_b=stepped,
            )
    return m


def output_matrix(g: Generator, steps: int = 1) -> BitMatrix:
    """(steps * word_width) x n matrix mapping state to the next outputs."""
    n = g.state_bits
    w = g.word_width
    rows = steps * w
    dense = np.zeros((rows, n), dtype=np.uint8)
    for i in range(n):
        g.set_state(1 << i)
        out = g.words(steps)
        for t in range(steps):
            v = int(out[t])
            for b in range(w):
                dense[t * w + b, i] = (v >> (w - 1 - b)) & 1
    return BitMatrix.from_dense(dense)


def minimal_poly_of_bit(g: Generator, bit_index: int, n_samples: int) -> Gf2Poly:
    """Berlekamp-Massey over one output bit across consecutive outputs.

    For a linear generator, n_samples >= 2 * state_bits + 64 guarantees the
    recurrence is pinned down.
    """
    if not 0 <= bit_index < g.word_width:
        raise DomainError(f"bit index {bit_index} outside word of {g.word_width} bits")
    w = g.words(n_samples)
    bits = ((w >> np.uint64(bit_index)) & np.uint64(1)).astype(np.uint8)
    return berlekamp_massey(bits)


def output_bit_stream(g: Generator, bit_index: int, count: int) -> np.ndarray:
    """`count` consecutive values of one output bit, as a uint8 array."""
    if not 0 <= bit_index < g.word_width:
        raise DomainError(f"bit index {bit_index} outside word of {g.word_width} bits")
    w = g.words(count)
    return ((w >> np.uint64(bit_index)) & np.uint64(1)).astype(np.uint8)
