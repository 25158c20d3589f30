"""Multivariate Bernoulli and Euler polynomials of order t.

Polynomials live in Q[params][x_1..x_d], stored as a single sparse
:class:`~umbral.ring.Poly` whose x-variables are named ``x1 .. xd``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import series as _series
from .multiindex import MultiIndex, binomial, sub_indices
from .ring import Poly, Scalar, as_fraction
from .series import DEFAULT_ORDER, TruncatedSeries
from .umbrae import (
    TupleUmbra,
    Umbra,
    bernoulli_umbra,
    dot_product_gf,
    euler_minus_unity,
    euler_umbra,
)

__all__ = [
    "MvPolynomial",
    "CheckResult",
    "bernoulli_poly",
    "euler_poly",
    "evaluate",
    "affine_substitute",
    "umbral_shift",
    "umbral_substitute",
    "addition_theorem_check",
    "poly_gf_check",
    "doubled_bernoulli_split_check",
]


def xvars(d: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(d))


class MvPolynomial:
    """Polynomial in x_1..x_d whose coefficients are polynomials in t (or s, t)."""

    __slots__ = ("d", "poly")

    def __init__(self, d: int, poly: Poly | Scalar = 0):
        if d < 1:
            raise ValueError("dimension d must be >= 1")
        self.d = d
        self.poly = Poly.coerce(poly)

    @classmethod
    def monomial(cls, w: Sequence[int], coeff=1) -> "MvPolynomial":
        w = MultiIndex(w)
        x = Poly.monomial(dict(zip(xvars(w.d), w)))
        return cls(w.d, x * Poly.coerce(coeff))

    @classmethod
    def constant(cls, d: int, c=1) -> "MvPolynomial":
        return cls(d, Poly.coerce(c))

    @property
    def xnames(self) -> tuple[str, ...]:
        return xvars(self.d)

    @property
    def terms(self) -> dict[MultiIndex, Poly]:
        """Exponent of x -> coefficient in the parameter ring."""
        return {MultiIndex(k): c for k, c in sorted(self.poly.collect(self.xnames).items())}

    def coefficient(self, w: Sequence[int]) -> Poly:
        return self.terms.get(MultiIndex(w), Poly())

    def degree(self) -> int:
        return max((w.degree for w in self.terms), default=-1)

    def _wrap(self, other) -> Poly:
        if isinstance(other, MvPolynomial):
            if other.d != self.d:
                raise ValueError(f"dimension mismatch: {self.d} != {other.d}")
            return other.poly
        return Poly.coerce(other)

    def __add__(self, other):
        return MvPolynomial(self.d, self.poly + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return MvPolynomial(self.d, self.poly - self._wrap(other))

    def __neg__(self):
        return MvPolynomial(self.d, -self.poly)

    def __mul__(self, other):
        return MvPolynomial(self.d, self.poly * self._wrap(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, MvPolynomial):
            return self.d == other.d and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.poly))

    def subs_params(self, **values) -> "MvPolynomial":
        return MvPolynomial(self.d, self.poly.subs(values))

    def rename_x(self, prefix: str) -> Poly:
        """The underlying Poly with x_i renamed to ``prefix`` i."""
        return self.poly.rename(dict(zip(self.xnames, xvars(self.d, prefix))))

    def __str__(self):
        return self.poly.to_string(self.xnames)

    def __repr__(self):
        return f"MvPolynomial(d={self.d}, {self.poly})"


@dataclass
class CheckResult:
    """Outcome of one identity check: ok, and every mismatching coefficient."""

    name: str
    inputs: dict
    lhs: object
    rhs: object
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _mismatches(lhs: Poly, rhs: Poly) -> list:
    diff = Poly.coerce(lhs) - Poly.coerce(rhs)
    return [(dict(m), c) for m, c in diff.sorted_terms()]


def _expand_binomial(v: MultiIndex, values) -> MvPolynomial:
    """sum_{k<=v} C(v,k) x^{v-k} values(k)."""
    x = xvars(v.d)
    acc = Poly()
    for k in sub_indices(v):
        val = values(k)
        if not val:
            continue
        mono = Poly.monomial(dict(zip(x, v - k)))
        acc = acc + mono * (Poly.coerce(val) * binomial(v, k))
    return MvPolynomial(v.d, acc)


@lru_cache(maxsize=64)
def _bernoulli_moments(base: Umbra) -> TruncatedSeries:
    return dot_product_gf(TupleUmbra(base, 1)).base.moments


@lru_cache(maxsize=64)
def _euler_poly_moments(base: Umbra) -> TruncatedSeries:
    # moments of 1/2 [t.(eta - u)]
    emu = euler_minus_unity(1, base.order, euler=base)
    return _series.scale_arg(dot_product_gf(emu).base.moments, Fraction(1, 2))


def bernoulli_poly(v: Sequence[int], order: int = DEFAULT_ORDER, base: Umbra | None = None) -> MvPolynomial:
    """E[(x + t.iota)^v] = sum_{k<=v} C(v,k) x^{v-k} B_k^{(t)}."""
    v = MultiIndex(v)
    base = base or bernoulli_umbra(order)
    if v.degree > base.order:
        raise ValueError(f"|v| = {v.degree} exceeds truncation order {base.order}")
    m = _bernoulli_moments(base)
    return _expand_binomial(v, lambda k: m[k.degree])


def euler_poly(v: Sequence[int], order: int = DEFAULT_ORDER, base: Umbra | None = None) -> MvPolynomial:
    """E[(x + 1/2 [t.(eta - u)])^v] with the Norlund normalisation."""
    v = MultiIndex(v)
    base = base or euler_umbra(order)
    if v.degree > base.order:
        raise ValueError(f"|v| = {v.degree} exceeds truncation order {base.order}")
    m = _euler_poly_moments(base)
    return _expand_binomial(v, lambda k: m[k.degree])


def evaluate(P: MvPolynomial, x: Sequence[Scalar], t: Scalar | None = None, **params) -> Fraction:
    if len(x) != P.d:
        raise ValueError(f"point of dimension {len(x)} for a polynomial in {P.d} variables")
    values = {name: as_fraction(xi) for name, xi in zip(P.xnames, x)}
    if t is not None:
        values["t"] = as_fraction(t)
    values.update({k: as_fraction(v) for k, v in params.items()})
    free = set(P.poly.variables) - set(values)
    if free:
        raise ValueError(f"no value for {sorted(free)}")
    return P.poly.evaluate(values)


def affine_substitute(P: MvPolynomial, a: Scalar, b) -> MvPolynomial:
    """P(a x + b 1), with b a rational or a polynomial in the parameters."""
    a = as_fraction(a)
    b = Poly.coerce(b)
    repl = {name: Poly.var(name) * a + b for name in P.xnames}
    return MvPolynomial(P.d, P.poly.subs(repl))


def umbral_shift(P: MvPolynomial, T: TupleUmbra) -> MvPolynomial:
    """E[P(x + mu)] for a tuple mu uncorrelated with everything inside P."""
    if T.d != P.d:
        raise ValueError(f"dimension mismatch: {P.d} != {T.d}")
    x = P.xnames
    acc = Poly()
    for w, c in P.terms.items():
        for j in sub_indices(w):
            g = T.mv_moment(j)
            if not g:
                continue
            mono = Poly.monomial(dict(zip(x, w - j)))
            acc = acc + mono * (c * Poly.coerce(g) * binomial(w, j))
    return MvPolynomial(P.d, acc)


def umbral_substitute(P: MvPolynomial, T: TupleUmbra) -> Poly:
    """E[P(mu)]: every x^w becomes the multivariate moment g_w of T."""
    if T.d != P.d:
        raise ValueError(f"dimension mismatch: {P.d} != {T.d}")
    acc = Poly()
    for w, c in P.terms.items():
        acc = acc + c * Poly.coerce(T.mv_moment(w))
    return acc


def _family(name: str):
    if name == "bernoulli":
        return bernoulli_poly
    if name == "euler":
        return euler_poly
    raise ValueError(f"unknown family {name!r}")


def addition_theorem_check(
    v: Sequence[int],
    family: str = "bernoulli",
    order: int = DEFAULT_ORDER,
    base: Umbra | None = None,
) -> list[CheckResult]:
    """P_v^{(t+s)}(x+y) = sum C(v,k) P_k^{(t)}(x) P_{v-k}^{(s)}(y), and the s = -t corollary.

    Both identities are compared in Q[s,t][x,y] with s a genuine indeterminate.
    """
    v = MultiIndex(v)
    make = _family(family)
    x, y = xvars(v.d), xvars(v.d, "y")
    s, t = Poly.var("s"), Poly.var("t")
    polys = {k: make(k, order, base) for k in sub_indices(v)}

    P = polys[v].poly
    lhs = P.subs({"t": t + s, **{xi: Poly.var(xi) + Poly.var(yi) for xi, yi in zip(x, y)}})
    rhs = Poly()
    for k in sub_indices(v):
        right = polys[v - k].rename_x("y").subs(t=s)
        rhs = rhs + polys[k].poly * right * binomial(v, k)
    add = CheckResult(f"addition_{family}", {"v": list(v)}, lhs, rhs, _mismatches(lhs, rhs))

    lhs2 = Poly()
    for k in sub_indices(v):
        lhs2 = lhs2 + polys[k].poly * polys[v - k].poly.subs(t=-t) * binomial(v, k)
    rhs2 = Poly.monomial(dict(zip(x, v)), 2**v.degree)
    cor = CheckResult(f"addition_{family}_opposite", {"v": list(v)}, lhs2, rhs2, _mismatches(lhs2, rhs2))
    return [add, cor]


def poly_gf_check(
    max_n: int,
    family: str = "bernoulli",
    order: int = DEFAULT_ORDER,
    base: Umbra | None = None,
) -> list[CheckResult]:
    """Compare P_n^{(t)}(x), d = 1, with coefficients of the closed-form g.f.

    e^{xz} (z/(e^z-1))^t for Bernoulli, 2^t e^{xz}/(e^z+1)^t for Euler. The
    right-hand factors are built here from e^z directly, not from the umbrae.
    """
    if max_n > order:
        raise ValueError("max_n exceeds truncation order")
    if family == "bernoulli":
        inner = _series.reciprocal(_series.builtin("expm1_over_z", order))
    elif family == "euler":
        # 2/(e^z+1) = 1 / ((e^z+1)/2)
        half = _series.TruncatedSeries([1] + [Fraction(1, 2)] * order)
        inner = _series.reciprocal(half)
    else:
        raise ValueError(f"unknown family {family!r}")
    x = Poly.var("x1")
    exz = _series.TruncatedSeries([x**n for n in range(order + 1)])
    gf = _series.mul(exz, _series.power_t(inner))
    make = _family(family)
    out = []
    for n in range(max_n + 1):
        lhs = make((n,), order, base).poly
        rhs = gf[n]
        out.append(CheckResult(f"poly_gf_{family}", {"n": n}, lhs, rhs, _mismatches(lhs, rhs)))
    return out


def doubled_bernoulli_split_check(max_n: int, bernoulli: Umbra | None = None, euler: Umbra | None = None) -> list[CheckResult]:
    """2 iota == 1/2 (eta - u) + iota, moment by moment up to ``max_n``."""
    order = bernoulli.order if bernoulli else euler.order if euler else max(max_n, DEFAULT_ORDER)
    iota = TupleUmbra(bernoulli or bernoulli_umbra(order), 1)
    if max_n > order:
        raise ValueError("max_n exceeds truncation order")
    emu = euler_minus_unity(1, order, euler=euler)
    left = iota.scale(2)
    right = emu.scale(Fraction(1, 2)) + iota
    out = []
    for n in range(max_n + 1):
        a, b = left.mv_moment((n,)), right.mv_moment((n,))
        out.append(CheckResult("doubled_bernoulli_split", {"n": n}, a, b, [] if a == b else [({}, a - b)]))
    return out
