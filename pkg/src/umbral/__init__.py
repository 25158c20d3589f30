"""Exact multivariate Bernoulli and Euler numbers and polynomials of order t."""
from .multiindex import MultiIndex, partitions
from .polynomials import MvPolynomial, bernoulli_poly, euler_poly, evaluate
from .ring import Poly
from .series import TruncatedSeries
from .umbrae import (
    TupleUmbra,
    Umbra,
    bernoulli_number,
    bernoulli_tuple,
    dot_product_gf,
    dot_product_partition,
    euler_number,
    euler_tuple,
)

__version__ = "0.1.0"

__all__ = [
    "MultiIndex",
    "MvPolynomial",
    "Poly",
    "TruncatedSeries",
    "TupleUmbra",
    "Umbra",
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_tuple",
    "dot_product_gf",
    "dot_product_partition",
    "euler_number",
    "euler_poly",
    "euler_tuple",
    "evaluate",
    "partitions",
]
