"""Umbrae as moment sequences, and d-tuples with identical components.

A d-tuple (alpha, ..., alpha) has generating function f(alpha, z_1 + ... + z_d),
so its multivariate moment at v is the |v|-th moment of the base umbra. The
closure of such tuples under scaling, uncorrelated sums and dot-products by t
stays inside this form, which is all the Bernoulli/Euler machinery needs.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import series as _series
from .multiindex import MultiIndex, falling_factorial, partitions
from .ring import Poly, Scalar, as_fraction
from .series import DEFAULT_ORDER, POLY, QQ, TruncatedSeries

__all__ = [
    "Umbra",
    "TupleUmbra",
    "bernoulli_umbra",
    "euler_umbra",
    "unity_umbra",
    "augmentation_umbra",
    "bernoulli_tuple",
    "euler_tuple",
    "unity_tuple",
    "augmentation_tuple",
    "euler_minus_unity",
    "mv_moment",
    "dot_product_gf",
    "dot_product_partition",
    "bernoulli_number",
    "euler_number",
]


class Umbra:
    """An umbra, known through its moments a_0 = 1, a_1, ..., a_N."""

    __slots__ = ("moments", "label")

    def __init__(self, moments: TruncatedSeries, label: str = "alpha"):
        if moments[0] != 1:
            raise ValueError(f"umbra {label!r}: E[alpha^0] must be 1, got {moments[0]}")
        self.moments = moments
        self.label = label

    @property
    def order(self) -> int:
        return self.moments.order

    @property
    def is_parametric(self) -> bool:
        return self.moments.ring == POLY

    def moment(self, n: int):
        if n > self.order:
            raise ValueError(f"moment {n} exceeds truncation order {self.order}")
        return self.moments[n]

    def similar(self, other: "Umbra") -> bool:
        return self.moments == other.moments

    def __eq__(self, other):
        if not isinstance(other, Umbra):
            return NotImplemented
        return self.similar(other)

    def __hash__(self):
        return hash(self.moments)

    def __repr__(self):
        return f"Umbra({self.label})"


def bernoulli_umbra(order: int = DEFAULT_ORDER) -> Umbra:
    return Umbra(_series.builtin("bernoulli", order), "iota")


def euler_umbra(order: int = DEFAULT_ORDER) -> Umbra:
    return Umbra(_series.builtin("euler", order), "eta")


def unity_umbra(order: int = DEFAULT_ORDER) -> Umbra:
    return Umbra(_series.builtin("unity", order), "u")


def augmentation_umbra(order: int = DEFAULT_ORDER) -> Umbra:
    """epsilon: generating function 1."""
    return Umbra(_series.identity(order), "epsilon")


class TupleUmbra:
    """The d-tuple (alpha, ..., alpha) built on a base umbra."""

    __slots__ = ("base", "d")

    def __init__(self, base: Umbra, d: int):
        if d < 1:
            raise ValueError("dimension d must be >= 1")
        self.base = base
        self.d = d

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def is_parametric(self) -> bool:
        return self.base.is_parametric

    @property
    def label(self) -> str:
        return self.base.label

    def mv_moment(self, v: Sequence[int]):
        """E[mu^v] = a_{|v|} of the base umbra."""
        v = MultiIndex(v)
        if v.d != self.d:
            raise ValueError(f"multi-index of dimension {v.d} for a {self.d}-tuple")
        if v.degree > self.order:
            raise ValueError(f"|v| = {v.degree} exceeds truncation order {self.order}")
        return self.base.moments[v.degree]

    def _check(self, other: "TupleUmbra") -> None:
        if not isinstance(other, TupleUmbra):
            raise TypeError("expected a TupleUmbra")
        if self.d != other.d:
            raise ValueError(f"dimension mismatch: {self.d} != {other.d}")
        if self.base.moments.ring != other.base.moments.ring:
            raise ValueError("cannot combine a parametric tuple with a rational one")
        if self.order != other.order:
            raise ValueError("truncation orders differ")

    def scale(self, c: Scalar) -> "TupleUmbra":
        """c * mu, moments a_n -> c^n a_n."""
        c = as_fraction(c)
        return TupleUmbra(Umbra(_series.scale_arg(self.base.moments, c), f"{c}*{self.label}"), self.d)

    def __add__(self, other: "TupleUmbra") -> "TupleUmbra":
        """Sum of uncorrelated tuples: generating functions multiply."""
        self._check(other)
        m = _series.mul(self.base.moments, other.base.moments)
        return TupleUmbra(Umbra(m, f"({self.label}+{other.label})"), self.d)

    def inverse(self, var: str = "t") -> "TupleUmbra":
        """-t.mu for a parametric tuple (t -> -t); the reciprocal g.f. otherwise."""
        if self.is_parametric:
            m = self.base.moments.subs({var: -Poly.var(var)})
        else:
            m = _series.reciprocal(self.base.moments)
        return TupleUmbra(Umbra(m, f"-1.{self.label}"), self.d)

    def at(self, t: Scalar, var: str = "t") -> "TupleUmbra":
        """Specialise the order parameter to a rational value."""
        if not self.is_parametric:
            return self
        return TupleUmbra(Umbra(self.base.moments.at(as_fraction(t), var), self.label), self.d)

    def similar(self, other: "TupleUmbra") -> bool:
        return self.d == other.d and self.base.similar(other.base)

    def __eq__(self, other):
        if not isinstance(other, TupleUmbra):
            return NotImplemented
        return self.similar(other)

    def __hash__(self):
        return hash((self.d, self.base))

    def __repr__(self):
        return f"TupleUmbra({self.label}, d={self.d}, order={self.order})"


def bernoulli_tuple(d: int, order: int = DEFAULT_ORDER) -> TupleUmbra:
    return TupleUmbra(bernoulli_umbra(order), d)


def euler_tuple(d: int, order: int = DEFAULT_ORDER) -> TupleUmbra:
    return TupleUmbra(euler_umbra(order), d)


def unity_tuple(d: int, order: int = DEFAULT_ORDER) -> TupleUmbra:
    return TupleUmbra(unity_umbra(order), d)


def augmentation_tuple(d: int, order: int = DEFAULT_ORDER) -> TupleUmbra:
    return TupleUmbra(augmentation_umbra(order), d)


def euler_minus_unity(d: int, order: int = DEFAULT_ORDER, euler: Umbra | None = None) -> TupleUmbra:
    """eta - u = eta + (-1).u; generating function f(eta, z) e^{-z}."""
    eta = TupleUmbra(euler or euler_umbra(order), d)
    return eta + unity_tuple(d, eta.order).scale(-1)


def mv_moment(T: TupleUmbra, v: Sequence[int]):
    return T.mv_moment(v)


@lru_cache(maxsize=256)
def _power_t(moments: TruncatedSeries, var: str) -> TruncatedSeries:
    return _series.power_t(moments, var)


def dot_product_gf(T: TupleUmbra, var: str = "t") -> TupleUmbra:
    """t.mu with generating function [f(mu, z)]^t, t kept symbolic."""
    if T.is_parametric:
        raise ValueError("dot product of an already parametric tuple is not supported")
    return TupleUmbra(Umbra(_power_t(T.base.moments, var), f"{var}.{T.label}"), T.d)


@lru_cache(maxsize=4096)
def _partition_profile(v: MultiIndex) -> tuple[tuple[int, int, tuple[tuple[int, int], ...]], ...]:
    # (coefficient, length, ((|column|, r), ...)) per partition
    out = []
    for lam in partitions(v):
        sizes = tuple((c.degree, r) for c, r in zip(lam.columns, lam.multiplicities))
        out.append((lam.coefficient(), lam.length, sizes))
    return tuple(out)


@lru_cache(maxsize=None)
def _falling(k: int, var: str) -> Poly:
    return Poly.coerce(falling_factorial(Poly.var(var), k))


def dot_product_partition(T: TupleUmbra, v: Sequence[int], var: str = "t") -> Poly:
    """E[(t.mu)^v] summed over the multipartite partitions of v.

    sum_lambda v!/(m(lambda)! lambda!) (t)_{l(lambda)} prod_i g_{lambda_i}^{r_i}
    """
    v = MultiIndex(v)
    if v.d != T.d:
        raise ValueError(f"multi-index of dimension {v.d} for a {T.d}-tuple")
    if T.is_parametric:
        raise ValueError("partition path needs a tuple with rational moments")
    if v.degree > T.order:
        raise ValueError(f"|v| = {v.degree} exceeds truncation order {T.order}")
    if v.degree == 0:
        return Poly.const(1)
    a = T.base.moments
    by_length: dict[int, Fraction] = defaultdict(Fraction)
    for coeff, length, sizes in _partition_profile(v):
        term = Fraction(coeff)
        for size, r in sizes:
            term *= a[size] ** r
            if not term:
                break
        if term:
            by_length[length] += term
    acc = Poly()
    for length in sorted(by_length):
        acc = acc + _falling(length, var) * by_length[length]
    return acc


def _specialise(value, t):
    if t is None or t == "symbolic":
        return value
    return Poly.coerce(value).evaluate(t=as_fraction(t))


def bernoulli_number(v: Sequence[int], t=None, order: int = DEFAULT_ORDER, base: Umbra | None = None):
    """B_v^{(t)}: a polynomial in t, or its value when t is a rational."""
    v = MultiIndex(v)
    T = TupleUmbra(base or bernoulli_umbra(order), v.d)
    return _specialise(dot_product_gf(T).mv_moment(v), t)


def euler_number(v: Sequence[int], t=None, order: int = DEFAULT_ORDER, base: Umbra | None = None):
    """Frak-E_v^{(t)}: a polynomial in t, or its value when t is a rational."""
    v = MultiIndex(v)
    T = TupleUmbra(base or euler_umbra(order), v.d)
    return _specialise(dot_product_gf(T).mv_moment(v), t)
