"""Generator implementations behind a uniform interface."""

from __future__ import annotations

from ..errors import UnknownAlgorithmError
from .aesctr import Aes128Ctr
from .analysis import (
    linearity_xor_check,
    minimal_poly_of_bit,
    output_bit_stream,
    output_matrix,
    transition_matrix,
)
from .base import GOLDEN, Generator, SeedSpec, TransformWrapper, as_seed_spec, mix64, splitmix_at
from .mersenne import Mt19937, Mt19937_64
from .toys import Counter64, Lfsr127, MatrixToy, Toy8, Toy16, Zero64
from .well import Well1024a, Well512a
from .xoshiro import (
    SplitMix64,
    Xoroshiro128Engine,
    Xoroshiro128PlusPlus,
    Xorshift128Engine,
    Xorshift128Plus,
    Xoshiro256Plus,
    Xoshiro256PlusPlus,
)

# the generator roster under audit
ALGORITHMS = (
    "mt19937",
    "mt19937_64",
    "well512a",
    "well1024a",
    "xorshift128plus",
    "xoroshiro128plusplus",
    "xoshiro256plusplus",
    "xoshiro256plus",
    "xorshift128_engine",
    "xoroshiro128_engine",
    "splitmix64",
    "aes128ctr",
)

# small fixtures usable anywhere a generator name is accepted
TOYS = ("toy8", "toy16", "lfsr127", "counter64", "zero64")

_REGISTRY: dict[str, type[Generator]] = {
    cls.name: cls
    for cls in (
        Mt19937,
        Mt19937_64,
        Well512a,
        Well1024a,
        Xorshift128Plus,
        Xoroshiro128PlusPlus,
        Xoshiro256PlusPlus,
        Xoshiro256Plus,
        Xorshift128Engine,
        Xoroshiro128Engine,
        SplitMix64,
        Aes128Ctr,
        Toy8,
        Toy16,
        Lfsr127,
        Counter64,
        Zero64,
    )
}


def make(algorithm: str, seed=0) -> Generator:
    """Instantiate a fully seeded generator by name.

    `seed` is a master seed (int) or a SeedSpec. Linear engines are seeded
    to a nonzero state; aes128ctr derives key and counter from the seed.
    """
    try:
        cls = _REGISTRY[algorithm]
    except KeyError:
        raise UnknownAlgorithmError(
            f"unknown algorithm {algorithm!r}; known: {', '.join(sorted(_REGISTRY))}"
        ) from None
    return cls(as_seed_spec(seed))


def algorithm_names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


__all__ = [
    "ALGORITHMS",
    "TOYS",
    "Generator",
    "SeedSpec",
    "TransformWrapper",
    "make",
    "algorithm_names",
    "mix64",
    "splitmix_at",
    "GOLDEN",
    "linearity_xor_check",
    "transition_matrix",
    "output_matrix",
    "minimal_poly_of_bit",
    "output_bit_stream",
    "Mt19937",
    "Mt19937_64",
    "Well512a",
    "Well1024a",
    "Xorshift128Plus",
    "Xoroshiro128PlusPlus",
    "Xoshiro256PlusPlus",
    "Xoshiro256Plus",
    "Xorshift128Engine",
    "Xoroshiro128Engine",
    "SplitMix64",
    "Aes128Ctr",
    "Toy8",
    "Toy16",
    "Lfsr127",
    "Counter64",
    "Zero64",
    "MatrixToy",
]
