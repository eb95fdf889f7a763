"""Exact linear algebra over GF(2).

Dense bit matrices live in word-packed rows (see _bitops). Polynomials over
GF(2) are Python ints used as coefficient bit vectors: bit i is the
coefficient of x**i, which makes xor/shift the ring operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from ._bitops import U64, n_words, pack_int, pack_rows, popcount64, unpack_int, unpack_rows
from .errors import DimensionError, DomainError

_ONE = U64(1)


# ---------------------------------------------------------------------------
# bit matrices


class BitMatrix:
    """Dense matrix over GF(2), rows packed into uint64 words (LSB-first)."""

    __slots__ = ("words", "n_rows", "n_cols")

    def __init__(self, words: np.ndarray, n_rows: int, n_cols: int):
        if n_rows < 1 or n_cols < 1:
            raise DimensionError("matrix must have at least one row and column")
        self.words = words
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._mask_padding()

    def _mask_padding(self):
        rem = self.n_cols & 63
        if rem:
            self.words[:, -1] &= U64((1 << rem) - 1)

    # -- constructors

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(np.zeros((n_rows, n_words(n_cols)), dtype=np.uint64), n_rows, n_cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.words[i, i >> 6] = _ONE << U64(i & 63)
        return m

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        dense = np.ascontiguousarray(np.asarray(dense, dtype=np.uint8) & 1)
        if dense.ndim != 2:
            raise DimensionError("expected a 2-D array")
        out = cls.zeros(dense.shape[0], dense.shape[1])
        pack_rows(dense, out.words)
        return out

    @classmethod
    def from_row_ints(cls, rows, n_cols: int) -> "BitMatrix":
        m = cls.zeros(len(rows), n_cols)
        for i, r in enumerate(rows):
            m.words[i] = pack_int(r, n_cols)
        m._mask_padding()
        return m

    # -- accessors

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        unpack_rows(self.words, self.n_cols, out)
        return out

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j >> 6] >> U64(j & 63)) & _ONE)

    def row_int(self, i: int) -> int:
        return unpack_int(self.words[i])

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.words.copy(), self.n_rows, self.n_cols)

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def mul_vec(self, v: int) -> int:
        """Matrix-vector product over GF(2); v and result are bit ints."""
        vec = pack_int(v, self.n_cols)
        par = np.bitwise_count(self.words & vec).sum(axis=1) & 1
        out = 0
        for i in np.nonzero(par)[0]:
            out |= 1 << int(i)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and bool(np.array_equal(self.words, other.words))
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols})"


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2); bit i of `bits` is the coefficient of x**i.

    The zero polynomial is represented as bits == 0 with degree 0 and an
    empty coefficient set.
    """

    bits: int

    @classmethod
    def zero(cls) -> "Gf2Poly":
        return cls(0)

    @classmethod
    def one(cls) -> "Gf2Poly":
        return cls(1)

    @classmethod
    def x_pow(cls, n: int) -> "Gf2Poly":
        return cls(1 << n)

    @classmethod
    def from_exponents(cls, exps) -> "Gf2Poly":
        b = 0
        for e in exps:
            b ^= 1 << e
        return cls(b)

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1 if self.bits else 0

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def term_count(self) -> int:
        return self.bits.bit_count()

    def exponents(self):
        return [i for i in range(self.bits.bit_length()) if (self.bits >> i) & 1]

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_clmul(self.bits, other.bits))

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.bits ^ other.bits)

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_polymod(self.bits, other.bits))

    def divides(self, other: "Gf2Poly") -> bool:
        if self.is_zero:
            return other.is_zero
        return _polymod(other.bits, self.bits) == 0

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for e in reversed(self.exponents()):
            terms.append("1" if e == 0 else ("x" if e == 1 else f"x^{e}"))
        return " + ".join(terms)


def _clmul(a: int, b: int) -> int:
    """Carry-less product of two coefficient bit vectors."""
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def _polymod(a: int, m: int) -> int:
    if m == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    dm = m.bit_length() - 1
    da = a.bit_length() - 1
    while da >= dm and a:
        a ^= m << (da - dm)
        da = a.bit_length() - 1
    return a


def _polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, _polymod(a, b)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return _polymod(_clmul(a, b), m)


def count_nonzero_coeffs(p: Gf2Poly) -> int:
    """Number of set coefficients, leading term included."""
    return p.term_count()


# ---------------------------------------------------------------------------
# rank


@numba.njit(cache=True, nogil=True)
def _rank_kernel(words, n_cols):
    # Row echelon over GF(2); pivots on the first available row, ties broken
    # by lowest row index. Rows below the pivot front are zero in every
    # already-processed column, so row updates start at the pivot word.
    n_rows, nw = words.shape
    rank = 0
    for col in range(n_cols):
        w = col >> 6
        b = U64(col & 63)
        pivot = -1
        for r in range(rank, n_rows):
            if (words[r, w] >> b) & _ONE:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for q in range(w, nw):
                t = words[pivot, q]
                words[pivot, q] = words[rank, q]
                words[rank, q] = t
        for r in range(rank + 1, n_rows):
            if (words[r, w] >> b) & _ONE:
                for q in range(w, nw):
                    words[r, q] ^= words[rank, q]
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank(m: BitMatrix) -> int:
    """GF(2) rank; the input matrix is not mutated (works on a scratch copy)."""
    return int(_rank_kernel(m.words.copy(), m.n_cols))


# ---------------------------------------------------------------------------
# characteristic polynomial


@numba.njit(cache=True, nogil=True)
def _hessenberg_kernel(a, n):
    # Similarity reduction to upper Hessenberg form over GF(2). Every row
    # operation row_r ^= row_t is compensated by the column operation
    # col_t ^= col_r, which keeps the characteristic polynomial intact.
    nw = a.shape[1]
    for j in range(n - 2):
        w = j >> 6
        b = U64(j & 63)
        piv = -1
        for r in range(j + 1, n):
            if (a[r, w] >> b) & _ONE:
                piv = r
                break
        if piv < 0:
            continue
        t = j + 1
        if piv != t:
            for q in range(w, nw):
                tmp = a[piv, q]
                a[piv, q] = a[t, q]
                a[t, q] = tmp
            wp = piv >> 6
            bp = U64(piv & 63)
            wt = t >> 6
            bt = U64(t & 63)
            for r in range(n):
                xp = (a[r, wp] >> bp) & _ONE
                xt = (a[r, wt] >> bt) & _ONE
                if xp != xt:
                    a[r, wp] ^= _ONE << bp
                    a[r, wt] ^= _ONE << bt
        maskvec = np.zeros(nw, dtype=np.uint64)
        any_elim = False
        for r in range(t + 1, n):
            if (a[r, w] >> b) & _ONE:
                for q in range(w, nw):
                    a[r, q] ^= a[t, q]
                maskvec[r >> 6] |= _ONE << U64(r & 63)
                any_elim = True
        if any_elim:
            wt = t >> 6
            bt = U64(t & 63)
            w0 = (t + 1) >> 6
            for r in range(n):
                acc = U64(0)
                for q in range(w0, nw):
                    acc ^= a[r, q] & maskvec[q]
                if popcount64(acc) & _ONE:
                    a[r, wt] ^= _ONE << bt


@numba.njit(cache=True, nogil=True)
def _hess_charpoly_kernel(a, n):
    # Leading-principal-minor recurrence for an upper Hessenberg matrix:
    # p_k = (x + h[k-1,k-1]) p_{k-1} + sum_i h[i,k-1] (prod subdiag) p_i.
    npw = ((n + 1) + 63) >> 6
    P = np.zeros((n + 1, npw), dtype=np.uint64)
    P[0, 0] = _ONE
    for k in range(1, n + 1):
        carry = U64(0)
        for q in range(npw):
            v = P[k - 1, q]
            P[k, q] = (v << _ONE) | carry
            carry = v >> U64(63)
        if (a[k - 1, (k - 1) >> 6] >> U64((k - 1) & 63)) & _ONE:
            for q in range(npw):
                P[k, q] ^= P[k - 1, q]
        kw = (k - 1) >> 6
        kb = U64((k - 1) & 63)
        for i in range(k - 2, -1, -1):
            # subdiagonal entry h[i+1, i] gates every deeper term
            if not (a[i + 1, i >> 6] >> U64(i & 63)) & _ONE:
                break
            if (a[i, kw] >> kb) & _ONE:
                for q in range(npw):
                    P[k, q] ^= P[i, q]
    return P[n]


def char_poly(m: BitMatrix) -> Gf2Poly:
    """det(xI - M) over GF(2), monic of degree n.

    Equals the mod-2 projection of the integer characteristic polynomial of
    the 0/1 matrix. Computed by Hessenberg reduction followed by the
    leading-principal-minor recurrence; the input is not mutated.
    """
    if m.n_rows != m.n_cols:
        raise DimensionError(f"characteristic polynomial needs a square matrix, got {m.n_rows}x{m.n_cols}")
    a = m.words.copy()
    _hessenberg_kernel(a, m.n_rows)
    return Gf2Poly(unpack_int(_hess_charpoly_kernel(a, m.n_rows)))


# ---------------------------------------------------------------------------
# Berlekamp-Massey


@numba.njit(cache=True, nogil=True)
def _bm_kernel(bits):
    # Packed Berlekamp-Massey. Returns (L, connection polynomial words).
    # rev holds the sequence reversed so the discrepancy is a word-wise
    # AND/popcount against an offset window of rev.
    N = bits.size
    nw = (N >> 6) + 1
    c = np.zeros(nw, dtype=np.uint64)
    bpoly = np.zeros(nw, dtype=np.uint64)
    c[0] = _ONE
    bpoly[0] = _ONE
    rev = np.zeros(nw, dtype=np.uint64)
    for i in range(N):
        if bits[N - 1 - i]:
            rev[i >> 6] |= _ONE << U64(i & 63)
    L = 0
    m = 1
    for n in range(N):
        # d = sum_{i<=L} c_i s_{n-i} = parity(c & rev[N-1-n : N-n+L])
        off = N - 1 - n
        ow = off >> 6
        ob = U64(off & 63)
        acc = U64(0)
        top = (L >> 6) + 1
        for q in range(top):
            win = rev[ow + q] >> ob
            if ob and ow + q + 1 < nw:
                win |= rev[ow + q + 1] << (U64(64) - ob)
            acc ^= win & c[q]
        d = popcount64(acc) & _ONE
        if d:
            if 2 * L <= n:
                tmp = c.copy()
                _shift_xor(c, bpoly, m)
                bpoly = tmp
                L = n + 1 - L
                m = 1
            else:
                _shift_xor(c, bpoly, m)
                m += 1
        else:
            m += 1
    return L, c


@numba.njit(cache=True, nogil=True, inline="always")
def _shift_xor(dst, src, e):
    # dst ^= src << e, word-packed
    nw = dst.size
    ew = e >> 6
    eb = U64(e & 63)
    for q in range(nw - 1, ew - 1, -1):
        v = src[q - ew] << eb
        if eb and q - ew - 1 >= 0:
            v |= src[q - ew - 1] >> (U64(64) - eb)
        dst[q] ^= v


def berlekamp_massey(seq) -> Gf2Poly:
    """Minimal polynomial of the shortest LFSR generating the bit sequence.

    Returns the monic minimal polynomial (degree L = linear complexity);
    for the all-zero sequence the zero polynomial is returned (L = 0).
    A recurrence of degree L is determined by the first 2L bits.
    """
    bits = np.ascontiguousarray(np.asarray(seq, dtype=np.uint8) & 1)
    if bits.size < 1:
        raise DomainError("sequence must contain at least one bit")
    if not bits.any():
        return Gf2Poly.zero()
    L, c = _bm_kernel(bits)
    conn = unpack_int(c)
    # reciprocal of the connection polynomial: monic of degree exactly L
    mp = 0
    for i in range(L + 1):
        if (conn >> i) & 1:
            mp |= 1 << (L - i)
    return Gf2Poly(mp)


def linear_complexity(seq) -> int:
    """Degree of the shortest LFSR generating the sequence."""
    bits = np.ascontiguousarray(np.asarray(seq, dtype=np.uint8) & 1)
    if bits.size < 1:
        raise DomainError("sequence must contain at least one bit")
    if not bits.any():
        return 0
    L, _ = _bm_kernel(bits)
    return int(L)


def lfsr_regenerate(p: Gf2Poly, seed_bits, count: int):
    """Run the linear recurrence defined by minimal polynomial p.

    seed_bits supplies the first deg(p) values; returns `count` bits total.
    """
    L = p.degree
    taps = [L - e for e in p.exponents() if e != L]
    out = list(int(b) & 1 for b in seed_bits[:L])
    if p.is_zero:
        return [0] * count
    while len(out) < count:
        n = len(out)
        v = 0
        for t in taps:
            v ^= out[n - t]
        out.append(v)
    return out[:count]


# ---------------------------------------------------------------------------
# irreducibility


def is_irreducible(p: Gf2Poly) -> bool:
    """True iff p has no nontrivial factor over GF(2).

    Rabin's test: x^(2^n) == x (mod p) and gcd(x^(2^(n/q)) - x, p) == 1 for
    every prime q dividing n.
    """
    n = p.degree
    if p.is_zero or n < 1:
        raise DomainError("irreducibility requires degree >= 1")
    if n == 1:
        return True
    if not p.bits & 1:  # divisible by x
        return False
    m = p.bits
    # x^(2^k) mod p by repeated squaring
    def x_pow_pow2(k: int) -> int:
        t = 2  # the polynomial x
        for _ in range(k):
            t = _mulmod(t, t, m)
        return t

    for q in _prime_factors(n):
        h = x_pow_pow2(n // q) ^ 2
        if _polygcd(m, h) != 1:
            return False
    return x_pow_pow2(n) == 2


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# random-matrix rank distribution


def rank_probability(n: int, r: int) -> float:
    """Probability that a uniformly random n x n GF(2) matrix has rank r."""
    if r < 0 or r > n:
        raise DomainError(f"rank {r} outside [0, {n}]")
    # P(r) = 2^(-(n-r)^2) * prod_{i=0}^{r-1} (1 - 2^(i-n))^2 / (1 - 2^(i-r))
    log2_scale = -((n - r) ** 2)
    if log2_scale < -1060:
        return 0.0
    p = 2.0 ** log2_scale
    for i in range(r):
        num = 1.0 - 2.0 ** (i - n)
        den = 1.0 - 2.0 ** (i - r)
        p *= num * num / den
    return p


def rank_distribution(n: int) -> np.ndarray:
    """rank_probability(n, r) for r = 0..n."""
    return np.array([rank_probability(n, r) for r in range(n + 1)])
