"""Equidistribution analysis of linear generators via rank computations.

A generator with n state bits is (ell, d)-equidistributed iff the linear
map from the initial state to the upper `ell` bits of `d` consecutive
outputs has full row rank ell*d. Under full period over nonzero states this
makes every pattern appear 2^(n - ell*d) times (the all-zero pattern one
time fewer). Full period is assumed for the shipped linear generators, not
verified (primitivity testing is out of scope).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, LinearityError, ResourceBudgetError
from .gf2 import BitMatrix, char_poly, count_nonzero_coeffs, rank
from .engines.analysis import linearity_xor_check, minimal_poly_of_bit, transition_matrix
from .engines.base import Generator


@dataclass(frozen=True)
class EquidistQuery:
    """Pair of (bits considered, dimension)."""

    ell: int
    d: int

    def validate(self, g: Generator) -> None:
        if not 1 <= self.ell <= g.word_width:
            raise DomainError(f"ell must be in [1, {g.word_width}]")
        if self.d < 1:
            raise DomainError("d must be >= 1")


@dataclass
class EquidistScore:
    """Number of allowable (ell, d) pairs whose pattern count is wrong."""

    generator: str
    word_width: int
    state_bits: int
    allowable_pairs: int
    failing_pairs: int
    verdicts: dict = field(default_factory=dict)  # (ell, d) -> bool

    @property
    def failures(self) -> list[tuple[int, int]]:
        return sorted(k for k, ok in self.verdicts.items() if not ok)

    def to_json(self) -> str:
        return json.dumps(
            {
                "generator": self.generator,
                "word_width": self.word_width,
                "state_bits": self.state_bits,
                "allowable": self.allowable_pairs,
                "failing": self.failing_pairs,
                "failures": [{"ell": e, "d": d} for e, d in self.failures],
            },
            indent=2,
            sort_keys=True,
        )


def allowable_pair_count(word_width: int, state_bits: int) -> int:
    """Number of (ell, d) pairs with 1 <= ell <= word_width, ell*d <= state_bits."""
    return sum(state_bits // ell for ell in range(1, word_width + 1))


def _probe_outputs(g: Generator, d_max: int) -> np.ndarray:
    """Outputs of the first d_max steps from every unit state; (n, d_max)."""
    n = g.state_bits
    out = np.empty((n, d_max), dtype=np.uint64)
    for i in range(n):
        g.set_state(1 << i)
        out[i] = g.words(d_max)
    return out


def _pack_bit_column(bits: np.ndarray) -> int:
    """Pack a 0/1 vector into an int, bit i = bits[i]."""
    return int.from_bytes(np.packbits(bits.astype(np.uint8), bitorder="little").tobytes(), "little")


def _verify_linear(g: Generator, trials: int = 8) -> None:
    if not g.declared_linear:
        raise LinearityError(f"{g.name} is not declared linear")
    if not linearity_xor_check(g.clone(), trials=trials):
        raise LinearityError(f"{g.name} failed the stream-xor linearity check")


def output_map(g: Generator, q: EquidistQuery, verify: bool = True) -> BitMatrix:
    """(ell*d) x n matrix taking the initial state to the concatenated
    upper `ell` bits of `d` consecutive outputs; built by probing unit
    states. The generator's state is consumed."""
    q.validate(g)
    if verify:
        _verify_linear(g)
    n = g.state_bits
    w = g.word_width
    probes = _probe_outputs(g, q.d)
    m = BitMatrix.zeros(q.ell * q.d, n)
    for t in range(q.d):
        col = probes[:, t]
        for j in range(q.ell):
            bits = ((col >> np.uint64(w - 1 - j)) & np.uint64(1)).astype(np.uint8)
            row = np.zeros(m.words.shape[1], dtype=np.uint64)
            packed = np.packbits(bits, bitorder="little").tobytes()
            row[: (len(packed) + 7) // 8] = np.frombuffer(packed.ljust(8 * row.size, b"\0"), dtype="<u8")
            m.words[t * q.ell + j] = row
    m._mask_padding()
    return m


def is_equidistributed(g: Generator, q: EquidistQuery, verify: bool = True) -> bool:
    """True iff rank(output_map) == ell*d, i.e. the pattern counts are even.

    Requires ell*d <= state_bits; conditional on full period over nonzero
    states.
    """
    q.validate(g)
    if q.ell * q.d > g.state_bits:
        raise DomainError(
            f"ell*d = {q.ell * q.d} exceeds the {g.state_bits}-bit state; no decision possible"
        )
    m = output_map(g, q, verify=verify)
    return rank(m) == q.ell * q.d


class _XorBasis:
    """Incremental GF(2) row basis over Python ints."""

    __slots__ = ("pivots", "rank")

    def __init__(self):
        self.pivots: dict[int, int] = {}
        self.rank = 0

    def add(self, v: int) -> bool:
        while v:
            p = v.bit_length() - 1
            b = self.pivots.get(p)
            if b is None:
                self.pivots[p] = v
                self.rank += 1
                return True
            v ^= b
        return False


def equidistribution_score(g: Generator, verify: bool = True) -> EquidistScore:
    """Evaluate every allowable (ell, d) pair.

    Pairs are scanned in increasing d for each ell; once a pair fails, all
    deeper dimensions at that ell fail too (removing rows cannot raise a
    rank deficit), so the remaining pairs are pruned.
    """
    if verify:
        _verify_linear(g)
    n = g.state_bits
    w = g.word_width
    probes = _probe_outputs(g, n)  # d never exceeds state_bits
    verdicts: dict[tuple[int, int], bool] = {}
    failing = 0
    for ell in range(1, w + 1):
        d_max = n // ell
        if d_max == 0:
            break
        basis = _XorBasis()
        for t in range(d_max):
            col = probes[:, t]
            for j in range(ell):
                bits = (col >> np.uint64(w - 1 - j)) & np.uint64(1)
                basis.add(_pack_bit_column(bits))
            ok = basis.rank == ell * (t + 1)
            verdicts[(ell, t + 1)] = ok
            if not ok:
                for d in range(t + 2, d_max + 1):
                    verdicts[(ell, d)] = False
                failing += d_max - t
                break
    return EquidistScore(
        generator=g.name,
        word_width=w,
        state_bits=n,
        allowable_pairs=allowable_pair_count(w, n),
        failing_pairs=failing,
        verdicts=verdicts,
    )


def charpoly_weight_report(g: Generator, budget: int = 4096, force: bool = False) -> dict:
    """Degree and term count of the transition-matrix characteristic
    polynomial, its distance from the degree/2 ideal, and whether the
    per-bit minimal polynomial reaches the same degree."""
    if not g.declared_linear:
        raise LinearityError(f"{g.name} is not declared linear")
    if g.state_bits > budget and not force:
        raise ResourceBudgetError(
            f"state of {g.state_bits} bits exceeds budget {budget}; pass force=True to override"
        )
    m = transition_matrix(g)
    cp = char_poly(m)
    terms = count_nonzero_coeffs(cp)
    if g.get_state() == 0:
        g.set_state(1)
    mp = minimal_poly_of_bit(g, 0, 2 * g.state_bits + 64)
    return {
        "generator": g.name,
        "degree": cp.degree,
        "terms": terms,
        "ratio_to_half_degree": terms / (cp.degree / 2) if cp.degree else float("nan"),
        "minpoly_degree": mp.degree,
        "minpoly_matches_degree": mp.degree == cp.degree,
        "minpoly_divides_charpoly": mp.divides(cp),
    }
