"""Battery behavior on fixtures with known outcomes."""

import numpy as np
import pytest

from prngaudit import battery as B
from prngaudit import rank
from prngaudit.engines import Aes128Ctr, make
from prngaudit.engines.base import Generator
from prngaudit.errors import DomainError, ResourceBudgetError


class ConstantWords(Generator):
    """Stub emitting one fixed 64-bit word forever."""

    name = "const64"
    word_width = 64
    state_bits = 1
    declared_linear = False

    def __init__(self, value):
        self._v = value
        self.seed_spec = None

    def words(self, count):
        return np.full(count, self._v, dtype=np.uint64)

    def get_state(self):
        return 0

    def set_state(self, bits):
        pass


def stuck_at(p: float) -> ConstantWords:
    """Stub whose next_double is the constant p."""
    return ConstantWords(int(p * 2**53) << 11)


# ---------------------------------------------------------------------------
# fill modes


def test_fill_matrix_zero_generator():
    m = B.fill_matrix(make("zero64", 1), 32, B.FillMode.RAW_BITS)
    assert m.to_dense().sum() == 0


def test_fill_matrix_raw_layout_msb_first():
    # one constant word: the matrix row must replay its bits MSB-first
    value = 0xDEADBEEF12345678
    m = B.fill_matrix(ConstantWords(value), 64, B.FillMode.RAW_BITS)
    row = m.to_dense()[0]
    assert "".join(map(str, row)) == f"{value:064b}"


def test_fill_matrix_raw_continues_across_rows():
    g = make("aes128ctr", 3)
    stream = g.words(np.ceil(10 * 10 / 64).astype(int) + 1)
    bits = []
    for w in stream:
        bits.extend(int(b) for b in f"{int(w):064b}")
    m = B.fill_matrix(make("aes128ctr", 3), 10, B.FillMode.RAW_BITS)
    assert m.to_dense().flatten().tolist() == bits[:100]


def test_float_threshold_equals_most_significant_bit():
    g = make("xoshiro256plusplus", 6)
    words = g.words(400)
    m = B.fill_matrix(make("xoshiro256plusplus", 6), 20, B.FillMode.FLOAT_THRESHOLD)
    expect = (words[:400] >> np.uint64(63)).astype(np.uint8)
    assert m.to_dense().flatten().tolist() == expect.tolist()


def test_inversion_value_mapping():
    p = np.array([0.3, 0.8, 0.1, 0.26, 0.74, 0.75, 0.249])
    v = B.inversion_values(p)
    assert v.tolist() == [5, 6, 2, 5, 5, 6, 2]


def test_inversion_parity_equals_two_leading_fraction_bits():
    g = make("aes128ctr", 8)
    w = g.words(3000)
    p = (w >> np.uint64(11)).astype(np.float64) * 2.0**-53
    v = B.inversion_values(p)
    parity = v & 1
    b63 = (w >> np.uint64(63)) & np.uint64(1)
    b62 = (w >> np.uint64(62)) & np.uint64(1)
    assert np.array_equal(parity.astype(np.uint64), b63 ^ b62)


def test_inversion_frequencies():
    v = B.inversion_values(make("aes128ctr", 3).doubles(200_000))
    for value, want in ((2, 0.25), (5, 0.5), (6, 0.25)):
        assert abs(float((v == value).mean()) - want) < 0.01


def test_fill_matrix_rejects_bad_side():
    with pytest.raises(DomainError):
        B.fill_matrix(make("aes128ctr", 1), 0)


# ---------------------------------------------------------------------------
# charpoly parity experiment


def test_charpoly_experiment_thread_count_invariant():
    a = B.charpoly_parity_counts(make("aes128ctr", 5), n=96, samples=12, jobs=1)
    b = B.charpoly_parity_counts(make("aes128ctr", 5), n=96, samples=12, jobs=2)
    assert a == b


def test_charpoly_experiment_well512a_bound():
    h = B.charpoly_parity_experiment(make("well512a", 5), n=600, samples=6)
    assert max(h.bins) <= 513
    assert h.total == 6


# ---------------------------------------------------------------------------
# binary rank


def test_binary_rank_deterministic_fail_small_state():
    r = B.binary_rank_test(make("well512a", 9), L=1024, samples=10)
    assert r.verdict == "deterministic-fail"
    assert r.p_value is None
    assert r.details["max_rank"] <= 512


def test_binary_rank_aes_passes():
    r = B.binary_rank_test(make("aes128ctr", 9), L=128, samples=200)
    assert r.verdict is None
    assert 1e-4 <= r.p_value <= 1 - 1e-4


def test_binary_rank_float_mode_same_bound():
    r = B.binary_rank_test(make("well512a", 9), L=600, samples=4, mode=B.FillMode.FLOAT_THRESHOLD)
    assert r.verdict == "deterministic-fail"
    assert r.details["max_rank"] <= 512


# ---------------------------------------------------------------------------
# linear complexity


def test_linear_complexity_xorshift_fails():
    r = B.linear_complexity_test(make("xorshift128plus", 4), 0, 2048)
    assert r.verdict == "fail"
    assert r.details["complexity"] <= 128


def test_linear_complexity_scrambled_passes():
    r = B.linear_complexity_test(make("xoroshiro128plusplus", 4), 0, 2048)
    assert r.verdict == "pass"
    assert abs(r.details["complexity"] - 1024) <= 32


def test_linear_complexity_minimum_bits():
    with pytest.raises(DomainError):
        B.linear_complexity_test(make("aes128ctr", 1), 0, 32)


# ---------------------------------------------------------------------------
# collision


def test_collision_full_period_toy_fails():
    r = B.collision_test(make("toy16", 5), 16, 4096)
    assert r.verdict == "fail"
    assert r.details["observed"] == 0
    assert r.details["expected"] == pytest.approx(B.collision_expected(16, 4096))


def test_collision_expected_formula():
    # n - m + m (1 - 1/m)^n
    m, n = 2.0**16, 4096
    assert B.collision_expected(16, 4096) == pytest.approx(n - m + m * (1 - 1 / m) ** n, rel=1e-9)


def test_collision_aes_within_4_sigma():
    r = B.collision_test(make("aes128ctr", 5), 16, 4096)
    expected = r.details["expected"]
    assert abs(r.details["observed"] - expected) <= 4 * np.sqrt(expected)
    assert r.p_value > 1e-4


def test_collision_single_block_passes():
    r = B.collision_test(make("aes128ctr", 5), 16, 1)
    assert r.p_value == 1.0
    assert r.passed()


def test_collision_memory_budget():
    with pytest.raises(ResourceBudgetError):
        B.collision_test(make("aes128ctr", 1), 48, 100)


def test_collision_blocks_narrower_than_words():
    # 20-bit blocks from 64-bit words must tile the bit stream exactly
    g = make("aes128ctr", 13)
    words = g.words(40)
    bits = "".join(f"{int(w):064b}" for w in words)
    want = [int(bits[20 * i : 20 * i + 20], 2) for i in range(64)]
    got = B._blocks_from_words(words, 64, 20, 64)
    assert [int(x) for x in got] == want


# ---------------------------------------------------------------------------
# gap test


def test_gap_geometric_probabilities():
    # analytic law for the half interval: P(gap = k) = 0.5^(k+1)
    r = B.gap_test(make("aes128ctr", 21), 0.0, 0.5, max_gap=12, n_gaps=40000)
    counts = np.asarray(r.details["gap_counts"], dtype=float)
    freqs = counts / counts.sum()
    for k in range(6):
        assert abs(freqs[k] - 0.5 ** (k + 1)) < 0.01
    assert r.p_value > 1e-4


def test_gap_stuck_generator_degenerate():
    r = B.gap_test(stuck_at(0.7), 0.0, 0.5, max_gap=8, n_gaps=100)
    assert r.verdict == "deterministic-fail"


def test_gap_validates_interval():
    with pytest.raises(DomainError):
        B.gap_test(make("aes128ctr", 1), 0.7, 0.2)


# ---------------------------------------------------------------------------
# birthday spacings


def test_birthday_counter_fails():
    r = B.birthday_spacings_test(make("counter64", 3), d=30, n_points=4096)
    assert r.p_value < 1e-10  # spacings all identical


def test_birthday_two_points_passes():
    r = B.birthday_spacings_test(make("aes128ctr", 3), d=1, n_points=2)
    assert r.statistic == 0.0
    assert r.passed()


def test_birthday_parameter_domain():
    with pytest.raises(DomainError):
        B.birthday_spacings_test(make("aes128ctr", 1), d=60, n_points=4096)


# ---------------------------------------------------------------------------
# escape / decorrelation


def test_escape_aes_immediate():
    assert B.escape_from_zeroland(make("aes128ctr", 5), 3) == 0


def test_escape_well1024a_fast():
    t = B.escape_from_zeroland(make("well1024a", 5), 100)
    assert t is not None and t <= 5000


def test_escape_mt19937_slow():
    t = B.escape_from_zeroland(make("mt19937", 5), 777)
    assert t is not None and t > 100_000


def test_decorrelation_equals_escape_for_linear():
    for name, bit in (("well1024a", 600), ("xorshift128_engine", 7), ("mt19937", 777)):
        e = B.escape_from_zeroland(make(name, 5), bit)
        d = B.decorrelation_time(make(name, 5), bit)
        assert e == d, name


def test_decorrelation_aes_zero():
    assert B.decorrelation_time(make("aes128ctr", 5), 3) == 0


def test_stream_xor_identity_for_linear():
    # streams from S and S ^ e_b xor to the stream from e_b, word for word
    for name in ("well512a", "mt19937", "xoroshiro128_engine"):
        g1, g2, g3 = (make(name, 11) for _ in range(3))
        bit = 13
        base = make(name, 11)
        base.words(1)
        s = base.get_state() or 1
        g1.set_state(s)
        g2.set_state(s ^ (1 << bit))
        g3.set_state(1 << bit)
        n = 2000
        assert np.array_equal(g1.words(n) ^ g2.words(n), g3.words(n)), name


# ---------------------------------------------------------------------------
# hamming screen


def test_hamming_screen_all_zero_fails_first_chunk():
    r = B.hamming_weight_screen(make("zero64", 1), 1 << 22)
    assert r.p_value < 1e-20
    assert r.samples_used == 1 << 20


def test_hamming_screen_aes_passes_small_budget():
    r = B.hamming_weight_screen(make("aes128ctr", 1), 1 << 24)
    assert r.p_value >= 1e-20
    assert r.samples_used == 1 << 24


def test_hamming_screen_budget_floor():
    with pytest.raises(DomainError):
        B.hamming_weight_screen(make("aes128ctr", 1), 1 << 10)


# ---------------------------------------------------------------------------
# reports


def test_report_json_round_trip():
    r = B.collision_test(make("aes128ctr", 5), 16, 2048)
    back = B.TestReport.from_json(r.to_json())
    assert back == r


def test_report_pvalue_xor_verdict():
    with pytest.raises(ValueError):
        B.TestReport("t", "g", {}, 0.0, 0.5, "fail", 1)
    with pytest.raises(ValueError):
        B.TestReport("t", "g", {}, 0.0, None, None, 1)


def test_histogram_round_trip_and_moments():
    h = B.Histogram.from_values([3, 3, 5, 9])
    assert h.total == 4
    assert h.mean == 5.0
    assert h.variance == pytest.approx(6.0)
    assert sum(h.bins.values()) == h.total
    back = B.Histogram.from_csv(h.to_csv())
    assert back.bins == h.bins and back.total == h.total
    assert back.mean == pytest.approx(h.mean)


def test_reports_deterministic():
    a = B.binary_rank_test(make("aes128ctr", 42), L=64, samples=50).to_json()
    b = B.binary_rank_test(make("aes128ctr", 42), L=64, samples=50).to_json()
    assert a == b
