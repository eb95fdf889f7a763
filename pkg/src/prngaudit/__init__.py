"""prngaudit: quality-audit toolkit for pseudorandom number generators.

Subpackages:
    gf2        exact GF(2) linear algebra (rank, characteristic polynomials,
               Berlekamp-Massey, irreducibility, rank distribution)
    engines    bit-exact generator implementations behind a uniform interface
    battery    statistical tests and experiments producing TestReports
    equidist   equidistribution analysis of linear generators
    cli        reproducible command-line experiments
"""

from .gf2 import (
    BitMatrix,
    Gf2Poly,
    berlekamp_massey,
    char_poly,
    count_nonzero_coeffs,
    is_irreducible,
    linear_complexity,
    rank,
    rank_probability,
)

__all__ = [
    "BitMatrix",
    "Gf2Poly",
    "berlekamp_massey",
    "char_poly",
    "count_nonzero_coeffs",
    "is_irreducible",
    "linear_complexity",
    "rank",
    "rank_probability",
]

__version__ = "0.1.0"
