"""Truncated exponential generating functions.

Coefficient ``a[n]`` is the coefficient of z^n/n!, so products are binomial
convolutions. Coefficients live either in Q (``Fraction``) or in a
polynomial ring over Q (:class:`~umbral.ring.Poly`, normally Q[t]).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .ring import Poly, Scalar, as_fraction

__all__ = [
    "DEFAULT_ORDER",
    "QQ",
    "POLY",
    "TruncatedSeries",
    "mul",
    "reciprocal",
    "log1",
    "exp0",
    "power_t",
    "scale_arg",
    "builtin",
    "identity",
]

DEFAULT_ORDER = 12

QQ = "QQ"
POLY = "QQ[params]"


class TruncatedSeries:
    """Coefficients a_0..a_N of an exponential generating function."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable, ring: str | None = None):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        if ring is None:
            ring = POLY if any(isinstance(c, Poly) for c in coeffs) else QQ
        if ring == QQ:
            coeffs = tuple(as_fraction(c) for c in coeffs)
        elif ring == POLY:
            coeffs = tuple(Poly.coerce(c) for c in coeffs)
        else:
            raise ValueError(f"unknown coefficient ring {ring!r}")
        self.coeffs = coeffs
        self.ring = ring

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, ring={self.ring!r})"

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return NotImplemented

    def __add__(self, other):
        _check_compatible(self, other)
        return TruncatedSeries((a + b for a, b in zip(self, other)), self.ring)

    def __sub__(self, other):
        _check_compatible(self, other)
        return TruncatedSeries((a - b for a, b in zip(self, other)), self.ring)

    def __neg__(self):
        return TruncatedSeries((-a for a in self), self.ring)

    def scalar(self, c) -> "TruncatedSeries":
        """Multiply every coefficient by ``c`` (a rational or a ring element)."""
        if isinstance(c, Poly):
            return TruncatedSeries((c * a for a in self.lift()), POLY)
        return TruncatedSeries((a * c for a in self), self.ring)

    def lift(self) -> "TruncatedSeries":
        """Same series viewed over the polynomial ring."""
        return self if self.ring == POLY else TruncatedSeries(self.coeffs, POLY)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], self.ring)

    def subs(self, values=None, **kw) -> "TruncatedSeries":
        """Substitute parameters in every coefficient; collapses to Q when possible."""
        if self.ring == QQ:
            return self
        out = [c.subs(values, **kw) for c in self.coeffs]
        if all(c.is_constant() for c in out):
            return TruncatedSeries((c.to_fraction() for c in out), QQ)
        return TruncatedSeries(out, POLY)

    def at(self, t: Scalar, var: str = "t") -> "TruncatedSeries":
        return self.subs({var: t})


def _check_compatible(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if not isinstance(g, TruncatedSeries):
        raise TypeError("expected a TruncatedSeries")
    if f.order != g.order:
        raise ValueError(f"truncation orders differ: {f.order} != {g.order}")
    if f.ring != g.ring:
        raise ValueError(f"coefficient rings differ: {f.ring} != {g.ring}")


def _zero(ring: str):
    return Poly() if ring == POLY else Fraction(0)


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Product of generating functions: (fg)_n = sum_k C(n,k) f_k g_{n-k}."""
    _check_compatible(f, g)
    out = []
    for n in range(f.order + 1):
        acc = _zero(f.ring)
        for k in range(n + 1):
            if f[k] and g[n - k]:
                acc = acc + comb(n, k) * f[k] * g[n - k]
        out.append(acc)
    return TruncatedSeries(out, f.ring)


def identity(order: int = DEFAULT_ORDER, ring: str = QQ) -> TruncatedSeries:
    return TruncatedSeries([1] + [0] * order, ring)


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    a0 = f[0]
    if isinstance(a0, Poly):
        if not a0.is_constant():
            raise ValueError("constant coefficient is not invertible in the coefficient ring")
        a0 = a0.to_fraction()
    if not a0:
        raise ZeroDivisionError("series with zero constant term has no reciprocal")
    inv0 = 1 / a0
    g = [_zero(f.ring) + inv0]
    for n in range(1, f.order + 1):
        acc = _zero(f.ring)
        for k in range(1, n + 1):
            if f[k] and g[n - k]:
                acc = acc + comb(n, k) * f[k] * g[n - k]
        g.append(-acc * inv0)
    return TruncatedSeries(g, f.ring)


def log1(f: TruncatedSeries) -> TruncatedSeries:
    """Formal log of a series with constant term 1, from f' = (log f)' f."""
    if f[0] != 1:
        raise ValueError("log1 needs constant coefficient 1")
    h = [_zero(f.ring)]
    for n in range(f.order):
        # h_{n+1} = f_{n+1} - sum_{k<n} C(n,k) h_{k+1} f_{n-k}
        acc = f[n + 1]
        for k in range(n):
            if h[k + 1] and f[n - k]:
                acc = acc - comb(n, k) * h[k + 1] * f[n - k]
        h.append(acc)
    return TruncatedSeries(h, f.ring)


def exp0(h: TruncatedSeries) -> TruncatedSeries:
    """Formal exp of a series with constant term 0, from g' = h' g."""
    if h[0] != 0:
        raise ValueError("exp0 needs constant coefficient 0")
    g = [_zero(h.ring) + 1]
    for n in range(h.order):
        acc = _zero(h.ring)
        for k in range(n + 1):
            if h[k + 1] and g[n - k]:
                acc = acc + comb(n, k) * h[k + 1] * g[n - k]
        g.append(acc)
    return TruncatedSeries(g, h.ring)


def power_t(f: TruncatedSeries, var: str = "t") -> TruncatedSeries:
    """[f(z)]^t with t an indeterminate; coefficients become polynomials in t."""
    if f.ring != QQ:
        raise ValueError("power_t expects a series over Q")
    if f[0] != 1:
        raise ValueError("power_t needs constant coefficient 1")
    return exp0(log1(f).scalar(Poly.var(var)))


def scale_arg(f: TruncatedSeries, c: Scalar) -> TruncatedSeries:
    """f(cz): a_n -> c^n a_n."""
    c = as_fraction(c)
    return TruncatedSeries((a * c**n for n, a in enumerate(f)), f.ring)


def _expm1_over_z(order: int) -> TruncatedSeries:
    return TruncatedSeries(Fraction(1, n + 1) for n in range(order + 1))


def _cosh(order: int) -> TruncatedSeries:
    return TruncatedSeries(1 - n % 2 for n in range(order + 1))


@lru_cache(maxsize=None)
def _builtin(name: str, order: int) -> TruncatedSeries:
    if name == "unity":
        return TruncatedSeries([1] * (order + 1))
    if name == "expm1_over_z":
        return _expm1_over_z(order)
    if name == "bernoulli":
        return reciprocal(_expm1_over_z(order))
    if name == "euler":
        # 2e^z/(e^{2z}+1) = 1/cosh(z)
        return reciprocal(_cosh(order))
    if name == "cosh":
        return _cosh(order)
    raise ValueError(f"unknown builtin series {name!r}")


def builtin(name: str, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Named generating functions: bernoulli, euler, unity, expm1_over_z, cosh."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return _builtin(name, order)


def from_values(values: Sequence[Scalar]) -> TruncatedSeries:
    return TruncatedSeries(values, QQ)
