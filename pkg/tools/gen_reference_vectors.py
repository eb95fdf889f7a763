#!/usr/bin/env python3
"""Generate committed reference-vector fixtures for the conformance tests.

Each function below is a straight-line transcription of the published
reference implementation of its generator (MT19937 / MT19937-64 block
algorithm, SplitMix64, xoroshiro128++, xoshiro256++), kept deliberately
independent of the production kernels so the two can cross-check each
other. Run once; the outputs under tests/fixtures/ are committed.
"""

import pathlib

M32 = 0xFFFFFFFF
M64 = 0xFFFFFFFFFFFFFFFF
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def mt19937_block(seed, count):
    n, m = 624, 397
    mt = [0] * n
    mt[0] = seed & M32
    for i in range(1, n):
        mt[i] = (1812433253 * (mt[i - 1] ^ (mt[i - 1] >> 30)) + i) & M32
    mti = n
    out = []
    for _ in range(count):
        if mti >= n:
            for i in range(n):
                y = (mt[i] & 0x80000000) | (mt[(i + 1) % n] & 0x7FFFFFFF)
                mt[i] = mt[(i + m) % n] ^ (y >> 1) ^ (0x9908B0DF if y & 1 else 0)
            mti = 0
        y = mt[mti]
        mti += 1
        y ^= y >> 11
        y ^= (y << 7) & 0x9D2C5680
        y ^= (y << 15) & 0xEFC60000
        y ^= y >> 18
        out.append(y & M32)
    return out


def mt19937_64_block(seed, count):
    n, m = 312, 156
    mt = [0] * n
    mt[0] = seed & M64
    for i in range(1, n):
        mt[i] = (6364136223846793005 * (mt[i - 1] ^ (mt[i - 1] >> 62)) + i) & M64
    mti = n
    out = []
    for _ in range(count):
        if mti >= n:
            for i in range(n):
                y = (mt[i] & 0xFFFFFFFF80000000) | (mt[(i + 1) % n] & 0x7FFFFFFF)
                mt[i] = mt[(i + m) % n] ^ (y >> 1) ^ (0xB5026F5AA96619E9 if y & 1 else 0)
            mti = 0
        y = mt[mti]
        mti += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        out.append(y & M64)
    return out


def splitmix64(seed, count):
    x = seed & M64
    out = []
    for _ in range(count):
        x = (x + 0x9E3779B97F4A7C15) & M64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
        out.append(z ^ (z >> 31))
    return out


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & M64


def xoroshiro128pp(s0, s1, count):
    out = []
    for _ in range(count):
        out.append((rotl((s0 + s1) & M64, 17) + s0) & M64)
        s1 ^= s0
        s0 = rotl(s0, 49) ^ s1 ^ ((s1 << 21) & M64)
        s1 = rotl(s1, 28)
    return out


def xoshiro256pp(s, count):
    s = list(s)
    out = []
    for _ in range(count):
        out.append((rotl((s[0] + s[3]) & M64, 23) + s[0]) & M64)
        t = (s[1] << 17) & M64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
    return out


def write(name, header, values):
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / name
    with open(path, "w") as fh:
        fh.write(f"# {header}\n")
        for v in values:
            fh.write(f"{v}\n")
    print(f"wrote {path} ({len(values)} words)")


def main():
    count = 1200
    write("mt19937_seed5489.txt", "mt19937, init_genrand(5489)", mt19937_block(5489, count))
    write("mt19937_64_seed5489.txt", "mt19937_64, init_genrand64(5489)", mt19937_64_block(5489, count))
    write("splitmix64_seed0.txt", "splitmix64, state 0", splitmix64(0, count))
    # xoroshiro/xoshiro state words: splitmix64 stream from seed 1
    sm = splitmix64(1, 4)
    write(
        "xoroshiro128pp_sm1.txt",
        f"xoroshiro128++, state = first 2 splitmix64(1) outputs {sm[0]:#x} {sm[1]:#x}",
        xoroshiro128pp(sm[0], sm[1], count),
    )
    write(
        "xoshiro256pp_sm1.txt",
        f"xoshiro256++, state = first 4 splitmix64(1) outputs",
        xoshiro256pp(sm, count),
    )


if __name__ == "__main__":
    main()
