"""Sparse polynomials with exact rational coefficients.

A single class covers Q[t], Q[s, t] and the polynomial rings over
x_1..x_d, y_1..y_d used for addition theorems; indeterminates are
identified by name.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = ["Poly", "Scalar", "as_fraction", "T", "S"]

Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...], sorted by name, exps > 0

_ONE: Monomial = ()


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _var_key(name: str):
    # x2 < x10; letters first
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


class Poly:
    """Immutable sparse polynomial over Q in named indeterminates."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({_ONE: c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Scalar = 1) -> "Poly":
        mono = tuple(sorted((k, e) for k, e in exps.items() if e))
        if any(e < 0 for _, e in mono):
            raise ValueError("negative exponent")
        return cls({mono: coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], var: str = "t") -> "Poly":
        """Univariate polynomial from coefficients, lowest degree first."""
        return cls({((var, i),) if i else _ONE: c for i, c in enumerate(coeffs)})

    @staticmethod
    def coerce(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(as_fraction(x))

    # -- inspection -------------------------------------------------------

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    @property
    def variables(self) -> tuple[str, ...]:
        names = {name for m in self._terms for name, _ in m}
        return tuple(sorted(names, key=_var_key))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e for _, e in m) for m in self._terms)
        return max(dict(m).get(var, 0) for m in self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(_ONE, Fraction(0))

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.constant_term()

    def coeffs(self, var: str = "t") -> list[Fraction]:
        """Dense coefficient list in ``var`` (lowest first); requires no other indeterminates."""
        out = [Fraction(0)] * (self.degree(var) + 1 if self._terms else 0)
        for m, c in self._terms.items():
            d = dict(m)
            if set(d) - {var}:
                raise ValueError(f"{self} involves indeterminates other than {var!r}")
            out[d.get(var, 0)] = c
        return out

    def collect(self, names: Iterable[str]) -> dict[tuple[int, ...], "Poly"]:
        """Group by exponents of ``names``; values are polynomials in the rest."""
        names = tuple(names)
        idx = {n: i for i, n in enumerate(names)}
        out: dict[tuple[int, ...], dict] = {}
        for m, c in self._terms.items():
            key = [0] * len(names)
            rest = []
            for name, e in m:
                if name in idx:
                    key[idx[name]] = e
                else:
                    rest.append((name, e))
            out.setdefault(tuple(key), {})[tuple(rest)] = c
        return {k: Poly._raw(v) for k, v in out.items()}

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(as_fraction(other))
            except TypeError:
                return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(as_fraction(other))
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly._raw({})
            return Poly._raw({m: a * c for m, a in self._terms.items()})
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Poly._raw(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            c = as_fraction(other)
        except TypeError:
            if isinstance(other, Poly) and other.is_constant():
                c = other.to_fraction()
            else:
                return NotImplemented
        if not c:
            raise ZeroDivisionError("division of polynomial by zero")
        return Poly._raw({m: a / c for m, a in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- substitution -----------------------------------------------------

    def subs(self, values: Mapping[str, "Poly | Scalar"] | None = None, **kw) -> "Poly":
        """Simultaneous substitution of indeterminates by polynomials or rationals."""
        values = {**(values or {}), **kw}
        if not values:
            return self
        vals = {k: Poly.coerce(v) for k, v in values.items()}
        pow_cache: dict[tuple[str, int], Poly] = {}

        def power(name, e):
            key = (name, e)
            if key not in pow_cache:
                pow_cache[key] = vals[name] ** e
            return pow_cache[key]

        acc = Poly._raw({})
        for m, c in self._terms.items():
            keep = tuple((n, e) for n, e in m if n not in vals)
            term = Poly._raw({keep: c})
            for n, e in m:
                if n in vals:
                    term = term * power(n, e)
            acc = acc + term
        return acc

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        terms: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            exps: dict[str, int] = {}
            for n, e in m:
                n = mapping.get(n, n)
                exps[n] = exps.get(n, 0) + e
            key = tuple(sorted(exps.items()))
            terms[key] = terms.get(key, 0) + c
        return Poly(terms)

    def evaluate(self, values: Mapping[str, Scalar] | None = None, **kw) -> Fraction:
        """Substitute rationals for every indeterminate and return the value."""
        values = {**(values or {}), **kw}
        missing = set(self.variables) - set(values)
        if missing:
            raise ValueError(f"no value for {sorted(missing)}")
        vals = {k: as_fraction(v) for k, v in values.items()}
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for n, e in m:
                term *= vals[n] ** e
            total += term
        return total

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_term())
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def sorted_terms(self, leading=()):
        """Terms by descending degree; variables in ``leading`` take precedence."""
        lead = set(leading)

        def key(item):
            m = item[0]
            front = [(n, e) for n, e in m if n in lead]
            return (
                -sum(e for _, e in front),
                [(_var_key(n), -e) for n, e in front],
                -sum(e for _, e in m),
                [(_var_key(n), -e) for n, e in m],
            )
        return sorted(self._terms.items(), key=key)

    def __str__(self):
        return self.to_string()

    def to_string(self, leading=()) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(leading):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in sorted(m, key=lambda p: _var_key(p[0])))
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Poly({self})"


T = Poly.var("t")
S = Poly.var("s")
