"""Generator conformance, state handling, linearity probes, transforms."""

import pathlib
import random

import numpy as np
import pytest

from prngaudit import char_poly, is_irreducible
from prngaudit.engines import (
    ALGORITHMS,
    TOYS,
    Aes128Ctr,
    Mt19937,
    Mt19937_64,
    SeedSpec,
    TransformWrapper,
    linearity_xor_check,
    make,
    minimal_poly_of_bit,
    output_bit_stream,
    transition_matrix,
)
from prngaudit.errors import DomainError, LinearityError, UnknownAlgorithmError
from prngaudit.gf2 import lfsr_regenerate

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

LINEAR = [a for a in ALGORITHMS + TOYS if make(a, 1).declared_linear]
NONLINEAR = [a for a in ALGORITHMS + TOYS if not make(a, 1).declared_linear]


def load_fixture(name):
    with open(FIXTURES / name) as fh:
        return np.array([int(x) for x in fh.read().splitlines()[1:]], dtype=np.uint64)


# ---------------------------------------------------------------------------
# reference vectors


def test_mt19937_reference_vectors():
    assert np.array_equal(make("mt19937", 5489).words(1200), load_fixture("mt19937_seed5489.txt"))


def test_mt19937_64_reference_vectors():
    assert np.array_equal(
        make("mt19937_64", 5489).words(1200), load_fixture("mt19937_64_seed5489.txt")
    )


def test_splitmix64_reference_vectors():
    assert np.array_equal(make("splitmix64", 0).words(1200), load_fixture("splitmix64_seed0.txt"))


def test_xoroshiro128pp_reference_vectors():
    sm = make("splitmix64", 1).words(2)
    g = make("xoroshiro128plusplus", 0)
    g.set_state(int(sm[0]) | (int(sm[1]) << 64))
    assert np.array_equal(g.words(1200), load_fixture("xoroshiro128pp_sm1.txt"))


def test_xoshiro256pp_reference_vectors():
    sm = make("splitmix64", 1).words(4)
    g = make("xoshiro256plusplus", 0)
    g.set_state(sum(int(sm[i]) << (64 * i) for i in range(4)))
    assert np.array_equal(g.words(1200), load_fixture("xoshiro256pp_sm1.txt"))


def test_mt19937_against_numpy_randomstate():
    # numpy's legacy RandomState seeds MT19937 with the canonical scalar init
    rs = np.random.RandomState(5489)
    ref = np.frombuffer(rs.bytes(4000), dtype="<u4").astype(np.uint64)
    assert np.array_equal(make("mt19937", 5489).words(1000), ref)


def test_mt19937_init_by_array_against_stdlib_random():
    g = Mt19937(0)
    g.seed_by_array([5489])
    r = random.Random(5489)
    assert [int(x) for x in g.words(600)] == [r.getrandbits(32) for _ in range(600)]


def test_mt19937_ten_thousandth_output():
    # the value pinned for a default-seeded generator by the C++ standard
    assert int(make("mt19937", 5489).words(10000)[-1]) == 4123659995


def test_mt19937_64_ten_thousandth_output():
    assert int(make("mt19937_64", 5489).words(10000)[-1]) == 9981545732273789042


def test_aes128ctr_fips197_vector():
    g = Aes128Ctr(
        key=0x000102030405060708090A0B0C0D0E0F,
        counter=0x00112233445566778899AABBCCDDEEFF,
    )
    w = g.words(2)
    assert int(w[0]) == 0x69C4E0D86A7B0430
    assert int(w[1]) == 0xD8CDB78070B4C55A


def test_aes128ctr_counter_increments_big_endian():
    g = Aes128Ctr(key=0, counter=0xFFFFFFFFFFFFFFFF)  # low half all ones
    g.words(2)
    assert (g.get_state() & ((1 << 128) - 1)) == 0x10000000000000000


# ---------------------------------------------------------------------------
# make / seeding


def test_make_unknown_algorithm():
    with pytest.raises(UnknownAlgorithmError):
        make("nonsense")


def test_make_deterministic_long_prefix():
    a = make("xoshiro256plusplus", SeedSpec(99, 3))
    b = make("xoshiro256plusplus", SeedSpec(99, 3))
    assert np.array_equal(a.words(1_000_000), b.words(1_000_000))


def test_seedspec_streams_differ():
    a = make("xoshiro256plusplus", SeedSpec(99, 1)).words(64)
    b = make("xoshiro256plusplus", SeedSpec(99, 2)).words(64)
    assert not np.array_equal(a, b)


def test_spawn_reproducible_and_distinct():
    g = make("aes128ctr", 7)
    a = g.spawn(5).words(32)
    b = make("aes128ctr", 7).spawn(5).words(32)
    c = g.spawn(6).words(32)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_linear_engines_seeded_nonzero():
    for name in LINEAR:
        g = make(name, 0)
        assert g.get_state() != 0, name


# ---------------------------------------------------------------------------
# state handling


@pytest.mark.parametrize("name", ALGORITHMS + TOYS)
def test_state_round_trip(name):
    g = make(name, 123)
    g.words(17)  # arbitrary odd offset; exercises mid-block phases
    h = make(name, 45)
    h.set_state(g.get_state())
    assert np.array_equal(g.words(200), h.words(200))


@pytest.mark.parametrize("name", ALGORITHMS + TOYS)
def test_word_width_respected(name):
    g = make(name, 5)
    w = g.words(256)
    assert int(w.max()) < (1 << g.word_width)


def test_set_low_weight_state_weight_one():
    for name in ("mt19937", "well512a", "xorshift128_engine", "aes128ctr"):
        g = make(name, 1)
        g.set_low_weight_state(g.state_bits // 2)
        assert bin(g.get_state()).count("1") == 1


def test_set_low_weight_state_out_of_range():
    g = make("well512a", 1)
    with pytest.raises(DomainError):
        g.set_low_weight_state(512)


def test_mt19937_low_weight_state_outputs_sparse():
    g = make("mt19937", 1)
    g.set_low_weight_state(0)
    w = g.words(100)
    frac = np.bitwise_count(w).sum() / (100 * 32)
    assert frac < 0.05  # near-zero state stays near zero initially


def test_zero_state_fixed_point_for_linear():
    for name in LINEAR:
        g = make(name, 1)
        if name == "zero64":
            continue  # state has no influence by construction
        g.set_state(0)
        assert int(g.words(8).max()) == 0
        assert g.get_state() == 0


# ---------------------------------------------------------------------------
# doubles


def test_next_double_range_and_granularity():
    for name in ("mt19937", "xoshiro256plusplus", "aes128ctr", "well512a"):
        g = make(name, 9)
        d = g.doubles(2000)
        assert (d >= 0).all() and (d < 1).all()
        scaled = d * 2.0**53
        assert np.array_equal(scaled, np.floor(scaled))


def test_double_edge_values():
    g = make("zero64", 1)
    assert g.next_double() == 0.0
    # upper 53 bits all ones
    full = (2**53 - 1) << 11

    class Stub(Aes128Ctr):
        def words(self, count):
            return np.full(count, full, dtype=np.uint64)

    s = Stub(key=0, counter=0)
    assert s.next_double() == (2**53 - 1) / 2**53


def test_double_uses_upper_53_bits():
    g = make("xoshiro256plusplus", 31)
    h = g.clone()
    w = g.words(100)
    d = h.doubles(100)
    assert np.array_equal(d, (w >> np.uint64(11)).astype(np.float64) * 2.0**-53)


def test_double_32bit_combines_high_first():
    g = make("mt19937", 31)
    h = g.clone()
    w = g.words(8)
    d = h.doubles(4)
    combined = (w[0::2] << np.uint64(32)) | w[1::2]
    assert np.array_equal(d, (combined >> np.uint64(11)).astype(np.float64) * 2.0**-53)


# ---------------------------------------------------------------------------
# linearity probes


@pytest.mark.parametrize("name", LINEAR)
def test_linearity_xor_check_linear(name):
    assert linearity_xor_check(make(name, 3), trials=10) is True


@pytest.mark.parametrize("name", NONLINEAR)
def test_linearity_xor_check_nonlinear(name):
    assert linearity_xor_check(make(name, 3), trials=3) is False


def test_transition_matrix_agrees_with_stepping():
    g = make("well512a", 17)
    m = transition_matrix(g, verify_states=100)  # raises on disagreement
    assert m.n_rows == m.n_cols == 512


def test_transition_matrix_refuses_nonlinear():
    with pytest.raises(LinearityError):
        transition_matrix(make("aes128ctr", 1))


def test_xorshift128_engine_charpoly_irreducible():
    m = transition_matrix(make("xorshift128_engine", 1))
    cp = char_poly(m)
    assert cp.degree == 128
    assert is_irreducible(cp)


def test_transition_zero_maps_to_zero():
    m = transition_matrix(make("xoroshiro128_engine", 1))
    assert m.mul_vec(0) == 0


def test_minimal_poly_of_bit_bounds():
    mp = minimal_poly_of_bit(make("xorshift128plus", 5), 0, 320)
    assert 1 <= mp.degree <= 128


def test_minimal_poly_regenerates_stream():
    g = make("xorshift128_engine", 5)
    bits = output_bit_stream(g, 3, 4 * 128 + 64)
    g2 = make("xorshift128_engine", 5)
    mp = minimal_poly_of_bit(g2, 3, 2 * 128 + 64)
    assert mp.degree <= 128
    regen = lfsr_regenerate(mp, bits[: mp.degree].tolist(), bits.size)
    assert regen == bits.tolist()


def test_minimal_poly_of_random_bits_near_half():
    mp = minimal_poly_of_bit(make("aes128ctr", 5), 0, 2048)
    assert abs(mp.degree - 1024) <= 32


# ---------------------------------------------------------------------------
# transforms


def test_bit_reverse_involution():
    a = TransformWrapper(make("xoshiro256plusplus", 4), "bit_reverse")
    b = TransformWrapper(TransformWrapper(make("xoshiro256plusplus", 4), "bit_reverse"), "bit_reverse")
    plain = make("xoshiro256plusplus", 4)
    assert np.array_equal(b.words(500), plain.words(500))
    assert not np.array_equal(a.words(500), make("xoshiro256plusplus", 4).words(500))


def test_bit_reverse_scalar_agreement():
    g = TransformWrapper(make("mt19937", 4), "bit_reverse")
    plain = make("mt19937", 4)
    w = plain.words(10)
    r = g.words(10)
    for x, y in zip(w, r):
        assert int(y) == int(f"{int(x):032b}"[::-1], 2)


def test_lowest_k_bits():
    g = TransformWrapper(make("xoshiro256plusplus", 4), "lowest_k_bits", k=8)
    assert g.word_width == 8
    w = g.words(1000)
    assert int(w.max()) < 256
    plain = make("xoshiro256plusplus", 4).words(1000)
    assert np.array_equal(w, plain & np.uint64(0xFF))


def test_transform_validation():
    with pytest.raises(DomainError):
        TransformWrapper(make("mt19937", 1), "nope")
    with pytest.raises(DomainError):
        TransformWrapper(make("mt19937", 1), "lowest_k_bits", k=40)


# ---------------------------------------------------------------------------
# toys


def test_toy_full_periods():
    for name, period in (("toy8", 255), ("toy16", 65535)):
        g = make(name, 7)
        s0 = g.get_state()
        seen = 0
        for i in range(period + 1):
            g.words(1)
            seen = i + 1
            if g.get_state() == s0:
                break
        assert seen == period, name


def test_counter_emits_indices():
    g = make("counter64", 0)
    g.set_state(41)
    assert [int(x) for x in g.words(3)] == [41, 42, 43]


def test_lfsr127_recurrence():
    g = make("lfsr127", 3)
    w = g.words(8)
    stream = []
    for x in w:
        stream.extend(int(b) for b in f"{int(x):064b}")
    state = make("lfsr127", 3).get_state()
    s = [(state >> i) & 1 for i in range(127)]  # s[i] = s_{n-127+i}
    for k, bit in enumerate(stream):
        expect = s[k] ^ s[k + 1]
        assert bit == expect
        s.append(expect)
