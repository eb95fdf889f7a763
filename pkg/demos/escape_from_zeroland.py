#!/usr/bin/env python3
"""Recovery time from nearly-zero states, and why it equals decorrelation.

Starting a large sparse linear generator from a single set bit, the output
stays heavily biased toward zero for a long stretch: mt19937 needs several
hundred thousand steps before its words look balanced. The same clock
governs how long two streams started from states differing in one bit stay
visibly correlated; for linear generators the two times coincide exactly,
because the xor of the two streams IS the stream of the difference state.

Run: python3 demos/escape_from_zeroland.py
"""

import statistics

from prngaudit import battery
from prngaudit.engines import make

SEED = 0xD1CE5EED


def main():
    for algo in ("mt19937", "well1024a", "well512a", "xorshift128_engine", "aes128ctr"):
        g = make(algo, SEED)
        step = max(1, g.state_bits // 12)
        bits = list(range(0, g.state_bits, step))[:12]
        times = []
        for b in bits:
            t = battery.escape_from_zeroland(make(algo, SEED), b)
            times.append(battery.ESCAPE_CAP if t is None else t)
        print(f"{algo:>20}: median escape {statistics.median(times):>9.0f} iterations "
              f"(probed {len(bits)} single-bit states)")

    print()
    for algo in ("mt19937", "well1024a"):
        bit = make(algo, SEED).state_bits // 2
        e = battery.escape_from_zeroland(make(algo, SEED), bit)
        d = battery.decorrelation_time(make(algo, SEED), bit)
        print(f"{algo:>20}: escape={e} decorrelation={d} (equal: {e == d})")


if __name__ == "__main__":
    main()
