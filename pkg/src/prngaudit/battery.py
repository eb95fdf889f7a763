"""Statistical tests and experiments, each yielding a structured TestReport.

Per-sample work derives an independent sibling generator from the sample
index (SeedSpec stream = sample index), so results do not depend on
scheduling or thread count and identical configurations reproduce
byte-identical reports.
"""

from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.special import chdtrc
from scipy.stats import poisson

from ._bitops import U64, pack_bit_matrix, pack_stream_rows
from .errors import DomainError, ResourceBudgetError
from .gf2 import BitMatrix, char_poly, count_nonzero_coeffs, linear_complexity, rank, rank_probability
from .engines.analysis import _random_state, output_bit_stream
from .engines.base import Generator


# ---------------------------------------------------------------------------
# report containers


@dataclass
class TestReport:
    """Outcome of one battery run: statistic plus p-value or hard verdict."""

    test: str
    generator: str
    params: dict
    statistic: float
    p_value: float | None
    verdict: str | None
    samples_used: int
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.p_value is None) == (self.verdict is None):
            raise ValueError("exactly one of p_value / verdict must be present")
        if self.samples_used <= 0:
            raise ValueError("samples_used must be positive")

    def passed(self, alpha: float = 1e-4) -> bool:
        if self.verdict is not None:
            return self.verdict == "pass"
        return self.p_value >= alpha

    def to_json(self) -> str:
        doc = {
            "test": self.test,
            "generator": self.generator,
            "params": self.params,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "verdict": self.verdict,
            "samples": self.samples_used,
            "details": self.details,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "TestReport":
        doc = json.loads(text)
        return cls(
            test=doc["test"],
            generator=doc["generator"],
            params=doc["params"],
            statistic=doc["statistic"],
            p_value=doc["p_value"],
            verdict=doc["verdict"],
            samples_used=doc["samples"],
            details=doc.get("details", {}),
        )


@dataclass
class Histogram:
    """Counts per integer bin with summary moments."""

    bins: dict[int, int]
    total: int
    mean: float
    variance: float

    @classmethod
    def from_values(cls, values) -> "Histogram":
        values = list(int(v) for v in values)
        bins: dict[int, int] = {}
        for v in values:
            bins[v] = bins.get(v, 0) + 1
        arr = np.asarray(values, dtype=np.float64)
        return cls(bins=bins, total=len(values), mean=float(arr.mean()), variance=float(arr.var()))

    def to_csv(self) -> str:
        lines = ["bin,count"]
        for b in sorted(self.bins):
            lines.append(f"{b},{self.bins[b]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "Histogram":
        rows = [ln for ln in text.strip().splitlines()[1:] if ln]
        bins = {}
        values = []
        for ln in rows:
            b, c = ln.split(",")
            bins[int(b)] = int(c)
            values.extend([int(b)] * int(c))
        return cls.from_values(values)


class FillMode(enum.Enum):
    """How generator output becomes matrix entries."""

    RAW_BITS = "raw"
    FLOAT_THRESHOLD = "float"
    NONUNIFORM_INVERSION = "nonuniform"

    @classmethod
    def parse(cls, name: str) -> "FillMode":
        for m in cls:
            if m.value == name or m.name.lower() == name.lower():
                return m
        raise DomainError(f"unknown fill mode {name!r}")


# ---------------------------------------------------------------------------
# matrix filling


def inversion_values(p: np.ndarray) -> np.ndarray:
    """Nonuniform integer draws by inversion: 2 with probability 1/4,
    5 with probability 1/2, 6 with probability 1/4.

    5 is emitted on the whole interval [1/4, 3/4); see README for why the
    middle interval is mapped this way. The parity of the value equals the
    xor of the two leading fractional bits of p.
    """
    return np.where(p < 0.25, 2, np.where(p < 0.75, 5, 6)).astype(np.uint8)


def _derived(g: Generator, stream: int) -> Generator:
    if getattr(g, "seed_spec", None) is not None:
        return g.spawn(stream)
    return g


def fill_matrix(g: Generator, n: int, mode: FillMode = FillMode.RAW_BITS) -> BitMatrix:
    """n x n GF(2) matrix filled from generator output, row-major.

    RAW_BITS consumes each output word most-significant bit first.
    FLOAT_THRESHOLD stores 0 where the uniform double is < 1/2, else 1.
    NONUNIFORM_INVERSION stores the parity of the 2/5/6 inversion draw.
    """
    if n < 1:
        raise DomainError("matrix side must be >= 1")
    out = BitMatrix.zeros(n, n)
    if mode is FillMode.RAW_BITS:
        need = (n * n + g.word_width - 1) // g.word_width
        words = g.words(need)
        pack_stream_rows(words, g.word_width, n, out.words)
        return out
    p = g.doubles(n * n)
    if mode is FillMode.FLOAT_THRESHOLD:
        bits = (p >= 0.5).astype(np.uint8)
    else:
        bits = inversion_values(p) & 1
    pack_bit_matrix(np.ascontiguousarray(bits), out.words)
    return out


def charpoly_parity_counts(
    g: Generator,
    n: int = 1024,
    samples: int = 1000,
    mode: FillMode = FillMode.RAW_BITS,
    jobs: int = 1,
) -> list[int]:
    """Odd-coefficient count of the characteristic polynomial for each of
    `samples` generator-filled n x n matrices, in sample order.

    Counting nonzero GF(2) coefficients is exact for this purpose: an odd
    integer coefficient projects to 1 mod 2.
    """
    if samples < 1:
        raise DomainError("need at least one sample")

    def one(i: int) -> int:
        gi = _derived(g, i)
        m = fill_matrix(gi, n, mode)
        return count_nonzero_coeffs(char_poly(m))

    if jobs > 1 and getattr(g, "seed_spec", None) is not None:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(one, range(samples)))
    return [one(i) for i in range(samples)]


def charpoly_parity_experiment(
    g: Generator,
    n: int = 1024,
    samples: int = 1000,
    mode: FillMode = FillMode.RAW_BITS,
    jobs: int = 1,
) -> Histogram:
    """Distribution of the odd-coefficient counts over `samples` matrices."""
    return Histogram.from_values(charpoly_parity_counts(g, n, samples, mode, jobs))


# ---------------------------------------------------------------------------
# binary rank


def binary_rank_test(
    g: Generator,
    L: int = 1024,
    samples: int = 100,
    mode: FillMode = FillMode.RAW_BITS,
) -> TestReport:
    """Chi-square of L x L matrix ranks against the random-matrix law.

    Categories are {L, L-1, L-2, <= L-3}. When the generator's state is
    smaller than L and every observed rank fits inside it, the outcome is
    a deterministic failure rather than a p-value.
    """
    if samples < 1:
        raise DomainError("need at least one sample")
    ranks = []
    for i in range(samples):
        gi = _derived(g, i)
        ranks.append(rank(fill_matrix(gi, L, mode)))
    ranks_arr = np.asarray(ranks)
    counts = [
        int((ranks_arr == L).sum()),
        int((ranks_arr == L - 1).sum()),
        int((ranks_arr == L - 2).sum()),
        int((ranks_arr <= L - 3).sum()),
    ]
    params = {"L": L, "samples": samples, "mode": mode.value}
    details = {"rank_counts": {"full": counts[0], "minus1": counts[1], "minus2": counts[2], "rest": counts[3]},
               "max_rank": int(ranks_arr.max()), "min_rank": int(ranks_arr.min())}
    if g.state_bits < L and ranks_arr.max() <= g.state_bits:
        return TestReport(
            test="binary-rank",
            generator=g.name,
            params=params,
            statistic=float(ranks_arr.max()),
            p_value=None,
            verdict="deterministic-fail",
            samples_used=samples,
            details=details,
        )
    probs = [
        rank_probability(L, L),
        rank_probability(L, L - 1),
        rank_probability(L, L - 2),
    ]
    probs.append(max(1.0 - sum(probs), 0.0))
    expected = [p * samples for p in probs]
    stat = sum((o - e) ** 2 / e for o, e in zip(counts, expected) if e > 0)
    p_value = float(chdtrc(3, stat))
    return TestReport(
        test="binary-rank",
        generator=g.name,
        params=params,
        statistic=float(stat),
        p_value=p_value,
        verdict=None,
        samples_used=samples,
        details=details,
    )


# ---------------------------------------------------------------------------
# linear complexity


def linear_complexity_test(g: Generator, bit_index: int = 0, n_bits: int = 2048) -> TestReport:
    """Berlekamp-Massey on one output bit over n_bits consecutive outputs.

    A random bit sequence has complexity within a few bits of n/2, so a
    deficit beyond 32 bits is a deterministic failure (it certifies a
    recurrence far shorter than chance allows).
    """
    if n_bits < 64:
        raise DomainError("need at least 64 bits")
    bits = output_bit_stream(g, bit_index, n_bits)
    L = linear_complexity(bits)
    stat = n_bits / 2 - L
    verdict = "fail" if L < n_bits / 2 - 32 else "pass"
    return TestReport(
        test="linear-complexity",
        generator=g.name,
        params={"bit": bit_index, "n_bits": n_bits},
        statistic=float(stat),
        p_value=None,
        verdict=verdict,
        samples_used=n_bits,
        details={"complexity": L},
    )


# ---------------------------------------------------------------------------
# collision test


@numba.njit(cache=True, nogil=True)
def _blocks_from_words(words, width, r, n_blocks):
    # consume r-bit blocks from the word stream, bits taken MSB-first
    out = np.empty(n_blocks, dtype=np.uint64)
    wi = 0
    cur = words[0]
    left = width
    for k in range(n_blocks):
        acc = U64(0)
        need = r
        while need > 0:
            take = left if left < need else need
            acc = (acc << U64(take)) | ((cur >> U64(left - take)) & ((U64(1) << U64(take)) - U64(1)))
            left -= take
            need -= take
            if left == 0:
                wi += 1
                cur = words[wi] if wi < words.size else U64(0)
                left = width
        out[k] = acc
    return out


def collision_expected(block_bits: int, n_blocks: int) -> float:
    """Expected number of repeated blocks: n - m + m (1 - 1/m)^n, m = 2^r."""
    m = 2.0**block_bits
    return n_blocks - m + m * math.exp(n_blocks * math.log1p(-1.0 / m))


def _poisson_midp(observed: int, lam: float) -> float:
    """Two-sided mid-p value for a Poisson-distributed count."""
    if lam <= 0:
        return 1.0
    pmf = poisson.pmf(observed, lam)
    lo = poisson.cdf(observed, lam) - 0.5 * pmf
    hi = poisson.sf(observed, lam) + 0.5 * pmf
    return float(min(1.0, 2.0 * min(lo, hi)))


def collision_test(g: Generator, block_bits: int = 16, n_blocks: int = 4096) -> TestReport:
    """Counts duplicate r-bit output blocks against the birthday law.

    Deterministically fails when no collision appears although at least 20
    were expected (full-period structure makes repeats impossible).
    """
    if block_bits > 40:
        raise ResourceBudgetError("block size beyond 40 bits exceeds the table budget")
    if block_bits < 1 or n_blocks < 1:
        raise DomainError("need positive block size and count")
    need = (block_bits * n_blocks + g.word_width - 1) // g.word_width + 1
    words = g.words(need)
    blocks = _blocks_from_words(words, g.word_width, block_bits, n_blocks)
    observed = n_blocks - int(np.unique(blocks).size)
    expected = collision_expected(block_bits, n_blocks)
    params = {"block_bits": block_bits, "n_blocks": n_blocks}
    details = {"observed": observed, "expected": expected}
    if observed == 0 and expected >= 20:
        return TestReport(
            test="collision",
            generator=g.name,
            params=params,
            statistic=float(observed),
            p_value=None,
            verdict="fail",
            samples_used=n_blocks,
            details=details,
        )
    return TestReport(
        test="collision",
        generator=g.name,
        params=params,
        statistic=float(observed),
        p_value=_poisson_midp(observed, expected),
        verdict=None,
        samples_used=n_blocks,
        details=details,
    )


# ---------------------------------------------------------------------------
# gap test


def gap_test(
    g: Generator,
    alpha: float = 0.0,
    beta: float = 0.5,
    max_gap: int = 16,
    n_gaps: int = 10000,
) -> TestReport:
    """Chi-square of gaps between visits of the uniform output to
    [alpha, beta) against the geometric law."""
    if not 0.0 <= alpha < beta <= 1.0:
        raise DomainError("need 0 <= alpha < beta <= 1")
    if max_gap < 1 or n_gaps < 1:
        raise DomainError("need positive max_gap and n_gaps")
    p_in = beta - alpha
    budget = max(1_000_000, int(20 * n_gaps / p_in))
    counts = np.zeros(max_gap + 1, dtype=np.int64)
    got = 0
    drawn = 0
    since_last = 0
    chunk = 65536
    while got < n_gaps and drawn < budget:
        u = g.doubles(min(chunk, budget - drawn))
        drawn += u.size
        hits = (u >= alpha) & (u < beta)
        idx = np.nonzero(hits)[0]
        prev = -1
        for i in idx:
            gap = since_last + int(i) - prev - 1
            counts[min(gap, max_gap)] += 1
            got += 1
            since_last = 0
            prev = int(i)
            if got == n_gaps:
                break
        else:
            since_last += u.size - prev - 1
    params = {"alpha": alpha, "beta": beta, "max_gap": max_gap, "n_gaps": n_gaps}
    if got < n_gaps:
        return TestReport(
            test="gap",
            generator=g.name,
            params=params,
            statistic=float(got),
            p_value=None,
            verdict="deterministic-fail",
            samples_used=max(drawn, 1),
            details={"note": "insufficient gaps completed within draw budget", "gaps": got},
        )
    probs = [p_in * (1 - p_in) ** k for k in range(max_gap)]
    probs.append((1 - p_in) ** max_gap)
    expected = np.asarray(probs) * n_gaps
    stat = float(((counts - expected) ** 2 / expected).sum())
    return TestReport(
        test="gap",
        generator=g.name,
        params=params,
        statistic=stat,
        p_value=float(chdtrc(max_gap, stat)),
        verdict=None,
        samples_used=drawn,
        details={"gap_counts": counts.tolist()},
    )


# ---------------------------------------------------------------------------
# birthday spacings


def birthday_spacings_test(g: Generator, d: int = 30, n_points: int = 4096) -> TestReport:
    """Duplicate spacings between sorted d-bit points vs Poisson(n^3 / 2^(d+2))."""
    if d < 1 or d > g.word_width:
        raise DomainError(f"d must be in [1, {g.word_width}]")
    lam = n_points**3 / 2.0 ** (d + 2)
    if not 1.0 <= lam <= 1e4:
        raise DomainError(f"n^3/2^(d+2) = {lam:.3g} outside [1, 1e4]")
    w = g.words(n_points)
    points = np.sort(w >> np.uint64(g.word_width - d))
    spacings = np.diff(points)
    duplicates = int(spacings.size - np.unique(spacings).size)
    return TestReport(
        test="birthday-spacings",
        generator=g.name,
        params={"d": d, "n_points": n_points},
        statistic=float(duplicates),
        p_value=_poisson_midp(duplicates, lam),
        verdict=None,
        samples_used=n_points,
        details={"duplicates": duplicates, "lambda": lam},
    )


# ---------------------------------------------------------------------------
# escape from zeroland / decorrelation

ESCAPE_WINDOW = 1000
ESCAPE_DELTA = 0.01
ESCAPE_RUN = 10
ESCAPE_CAP = 10_000_000


def _escape_scan(stream, word_width: int) -> int | None:
    """First window offset where ESCAPE_RUN consecutive windows of
    ESCAPE_WINDOW outputs have mean weight fraction within 0.5 +/- delta."""
    w = ESCAPE_WINDOW
    consec = 0
    win_idx = 0
    per_chunk = 100
    max_windows = ESCAPE_CAP // w
    while win_idx < max_windows:
        n_win = min(per_chunk, max_windows - win_idx)
        words = stream(n_win * w)
        frac = np.bitwise_count(words).reshape(n_win, w).sum(axis=1) / (w * word_width)
        for f in frac:
            if abs(f - 0.5) <= ESCAPE_DELTA:
                consec += 1
                if consec == ESCAPE_RUN:
                    return (win_idx - ESCAPE_RUN + 1) * w
            else:
                consec = 0
            win_idx += 1
    return None


def escape_from_zeroland(g: Generator, bit_position: int) -> int | None:
    """Iterations from the single-bit state e_(bit_position) until output
    weights settle at one half; None when no escape within the cap."""
    g.set_low_weight_state(bit_position)
    return _escape_scan(g.words, g.word_width)


def decorrelation_time(g: Generator, bit_position: int) -> int | None:
    """Escape criterion applied to the xor of two streams whose starting
    states differ in exactly bit_position."""
    base = _random_state(g, 0xDEC0DE, 0)
    g1 = g.clone()
    g2 = g.clone()
    g1.set_state(base)
    g2.set_state(base ^ (1 << bit_position))

    def stream(count: int) -> np.ndarray:
        return g1.words(count) ^ g2.words(count)

    return _escape_scan(stream, g.word_width)


# ---------------------------------------------------------------------------
# Hamming-weight screen


def _weight_bins(width: int) -> tuple[int, int, np.ndarray]:
    """Per-weight bins inside mu +/- 3 sigma, tails merged; returns
    (lo, hi, probabilities) with probs[0] = P(weight < lo),
    probs[i] = P(weight = lo+i-1), probs[-1] = P(weight > hi)."""
    mu = width / 2
    sigma = math.sqrt(width) / 2
    lo = max(0, math.floor(mu - 3 * sigma))
    hi = min(width, math.ceil(mu + 3 * sigma))
    pmf = np.array([math.comb(width, v) for v in range(width + 1)], dtype=np.float64)
    pmf /= pmf.sum()
    probs = np.concatenate(([pmf[:lo].sum()], pmf[lo : hi + 1], [pmf[hi + 1 :].sum()]))
    return lo, hi, probs


def _pair_category_probs(width: int) -> tuple[int, int, np.ndarray]:
    """3-way weight buckets split at mu +/- sigma plus their probabilities."""
    mu = width / 2
    sigma = math.sqrt(width) / 2
    t1 = math.ceil(mu - sigma)  # low: weight < mu - sigma
    t2 = math.floor(mu + sigma)  # high: weight > mu + sigma
    pmf = np.array([math.comb(width, v) for v in range(width + 1)], dtype=np.float64)
    pmf /= pmf.sum()
    p = np.array([pmf[:t1].sum(), pmf[t1 : t2 + 1].sum(), pmf[t2 + 1 :].sum()])
    return t1, t2, p


def hamming_weight_screen(g: Generator, budget_bytes: int = 1 << 30) -> TestReport:
    """Chi-square screen of word weights and consecutive-pair joint weights.

    Processes 2^20-byte chunks and stops as soon as the (Bonferroni-adjusted)
    p-value drops below 1e-20; samples_used reports the bytes consumed.
    """
    if budget_bytes < 1 << 20:
        raise DomainError("budget must be at least one 2^20-byte chunk")
    width = g.word_width
    bytes_per_word = width // 8
    chunk_words = (1 << 20) // bytes_per_word
    lo, hi, wprobs = _weight_bins(width)
    t1, t2, cprobs = _pair_category_probs(width)
    wcounts = np.zeros(wprobs.size, dtype=np.int64)
    pcounts = np.zeros((3, 3), dtype=np.int64)
    processed = 0
    threshold = 1e-20
    p_combined = 1.0
    while processed < budget_bytes:
        words = g.words(chunk_words)
        processed += chunk_words * bytes_per_word
        weights = np.bitwise_count(words).astype(np.int64)
        binned = np.clip(weights - lo + 1, 0, wprobs.size - 1)
        wcounts += np.bincount(binned, minlength=wprobs.size)
        cats = np.where(weights < t1, 0, np.where(weights > t2, 2, 1))
        a = cats[0::2]
        b = cats[1::2]
        pcounts += np.bincount(a * 3 + b, minlength=9).reshape(3, 3)
        n_words = wcounts.sum()
        exp_w = wprobs * n_words
        ok = exp_w > 0
        stat_w = float((((wcounts - exp_w) ** 2)[ok] / exp_w[ok]).sum())
        p_w = float(chdtrc(ok.sum() - 1, stat_w))
        n_pairs = pcounts.sum()
        exp_p = np.outer(cprobs, cprobs) * n_pairs
        stat_p = float((((pcounts - exp_p) ** 2) / exp_p).sum())
        p_p = float(chdtrc(8, stat_p))
        p_combined = min(1.0, 2.0 * min(p_w, p_p))
        if p_combined < threshold:
            break
    return TestReport(
        test="hamming-weight",
        generator=g.name,
        params={"budget_bytes": budget_bytes},
        statistic=float(max(stat_w, stat_p)),
        p_value=p_combined,
        verdict=None,
        samples_used=processed,
        details={"p_weights": p_w, "p_pairs": p_p, "bytes": processed},
    )
