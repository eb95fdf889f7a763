"""Equidistribution verdicts against exhaustive enumeration on toy sizes."""

import numpy as np
import pytest

from prngaudit import equidist as Q
from prngaudit.engines import MatrixToy, make, transition_matrix
from prngaudit.errors import DomainError, LinearityError, ResourceBudgetError
from prngaudit.gf2 import BitMatrix, rank


def enumerate_verdict(name: str, ell: int, d: int) -> bool:
    """Exhaustive oracle: walk the full period from every nonzero state and
    check that all ell*d-bit patterns appear equally often (the all-zero
    pattern once less)."""
    g = make(name, 1)
    n = g.state_bits
    w = g.word_width
    counts = {}
    for s in range(1, 1 << n):
        g.set_state(s)
        words = g.words(d)
        pat = 0
        for t in range(d):
            pat = (pat << ell) | (int(words[t]) >> (w - ell))
        counts[pat] = counts.get(pat, 0) + 1
    want = (1 << n) >> (ell * d)
    for pat in range(1 << (ell * d)):
        expect = want - 1 if pat == 0 else want
        if counts.get(pat, 0) != expect:
            return False
    return True


def test_allowable_pair_counts():
    assert Q.allowable_pair_count(32, 1024) == 4143
    assert Q.allowable_pair_count(1, 1) == 1
    assert Q.allowable_pair_count(2, 4) == 6
    assert Q.allowable_pair_count(8, 8) == 20


def test_toy8_all_pairs_match_enumeration():
    score = Q.equidistribution_score(make("toy8", 1))
    checked = 0
    for ell in range(1, 9):
        for d in range(1, 8 // ell + 1):
            want = enumerate_verdict("toy8", ell, d)
            assert score.verdicts[(ell, d)] == want, (ell, d)
            assert Q.is_equidistributed(make("toy8", 1), Q.EquidistQuery(ell, d), verify=False) == want
            checked += 1
    assert checked == score.allowable_pairs == 20


def test_toy8_full_state_pair():
    assert Q.is_equidistributed(make("toy8", 1), Q.EquidistQuery(8, 1)) is True
    assert enumerate_verdict("toy8", 8, 1) is True


def test_single_bit_single_dimension():
    # any generator whose top output row is nonzero is (1,1)-equidistributed
    for name in ("toy8", "toy16", "well512a", "xorshift128_engine"):
        assert Q.is_equidistributed(make(name, 1), Q.EquidistQuery(1, 1)) is True


def test_dimension_bound_refused():
    with pytest.raises(DomainError):
        Q.is_equidistributed(make("toy8", 1), Q.EquidistQuery(8, 2))
    # the map itself is still constructible
    m = Q.output_map(make("toy8", 1), Q.EquidistQuery(8, 2), verify=False)
    assert m.n_rows == 16 and m.n_cols == 8


def test_output_map_matches_running_generator():
    g = make("well512a", 23)
    q = Q.EquidistQuery(8, 3)
    m = Q.output_map(g, q, verify=False)
    probe = make("well512a", 23)
    rng = np.random.RandomState(5)
    for _ in range(100):
        s = int.from_bytes(rng.bytes(64), "little") & ((1 << 512) - 1)
        probe.set_state(s)
        words = probe.words(q.d)
        want = 0
        for t in range(q.d):
            want = (want << q.ell) | (int(words[t]) >> (32 - q.ell))
        got_vec = m.mul_vec(s)
        # mul_vec indexes rows LSB-first; reassemble the pattern MSB-first
        got = sum(((got_vec >> r) & 1) << (q.ell * q.d - 1 - r) for r in range(q.ell * q.d))
        assert got == want


def test_rank_monotone_in_rows():
    g = make("xorshift128_engine", 3)
    ranks = []
    for ell in (1, 2, 3, 4):
        m = Q.output_map(make("xorshift128_engine", 3), Q.EquidistQuery(ell, 16), verify=False)
        ranks.append(rank(m))
    assert all(ranks[i] <= ranks[i + 1] for i in range(3))


def test_monotone_failures():
    # failure at (ell, d) forces failure at every deeper allowable pair
    score = Q.equidistribution_score(make("xorshift128_engine", 1))
    for (ell, d), ok in score.verdicts.items():
        if not ok and (ell, d + 1) in score.verdicts:
            assert score.verdicts[(ell, d + 1)] is False


def test_score_refuses_nonlinear():
    with pytest.raises(LinearityError):
        Q.equidistribution_score(make("xoroshiro128plusplus", 1))
    with pytest.raises(LinearityError):
        Q.output_map(make("splitmix64", 1), Q.EquidistQuery(1, 1))


def test_score_json_shape():
    s = Q.equidistribution_score(make("toy8", 1))
    import json

    doc = json.loads(s.to_json())
    assert set(doc) == {"generator", "word_width", "state_bits", "allowable", "failing", "failures"}
    assert doc["allowable"] == 20
    assert len(doc["failures"]) == doc["failing"]


def test_charpoly_weight_report_companion_toy():
    dense = np.zeros((3, 3), dtype=np.uint8)
    dense[1, 0] = dense[2, 1] = 1
    dense[0, 2] = dense[1, 2] = 1  # companion of x^3 + x + 1
    toy = MatrixToy(BitMatrix.from_dense(dense), word_width=3, seed=1)
    rep = Q.charpoly_weight_report(toy)
    assert rep["degree"] == 3 and rep["terms"] == 3


def test_charpoly_weight_report_xorshift_engine():
    rep = Q.charpoly_weight_report(make("xorshift128_engine", 1))
    assert rep["degree"] == 128
    assert rep["minpoly_divides_charpoly"] is True
    assert rep["minpoly_matches_degree"] is True  # irreducible transition


def test_charpoly_weight_report_budget():
    with pytest.raises(ResourceBudgetError):
        Q.charpoly_weight_report(make("mt19937", 1))
