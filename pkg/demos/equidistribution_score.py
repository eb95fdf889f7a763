#!/usr/bin/env python3
"""Equidistribution scores by linear algebra, and the collision paradox.

For a linear generator the (ell, d) pattern counts over the full period are
decided by the rank of one bit matrix, so even 1024-bit generators are
scored in seconds. WELL1024a earns the perfect score, 0 failing pairs of
4143. The paradox: perfect equidistribution at full output width means
blocks never repeat, so a collision test that expects birthday-law repeats
is failed deterministically, here by the full-period 16-bit toy.

Run: python3 demos/equidistribution_score.py
"""

from prngaudit import battery, equidist
from prngaudit.engines import make

SEED = 0xD1CE5EED


def main():
    for algo in ("toy8", "toy16", "xorshift128_engine", "well512a", "well1024a"):
        s = equidist.equidistribution_score(make(algo, SEED))
        tag = "maximally equidistributed" if s.failing_pairs == 0 else \
            f"first failures: {s.failures[:4]}"
        print(f"{algo:>20}: {s.failing_pairs:4d} failing of {s.allowable_pairs:4d} ({tag})")

    print()
    expected = battery.collision_expected(16, 4096)
    for algo in ("toy16", "aes128ctr"):
        r = battery.collision_test(make(algo, SEED), 16, 4096)
        verdict = r.verdict or f"p={r.p_value:.3f}"
        print(f"collision test, {algo:>10}: observed {r.details['observed']:3d} "
              f"of ~{expected:.0f} expected -> {verdict}")


if __name__ == "__main__":
    main()
