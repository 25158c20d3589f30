"""Exact, lossless JSON encodings.

Rationals become ``"p/q"`` strings, elements of Q[t] become coefficient
arrays (lowest degree first), polynomials in x become sparse term lists.
"""
from __future__ import annotations

from fractions import Fraction

from .polynomials import MvPolynomial, xvars
from .ring import Poly

__all__ = ["encode", "decode", "encode_rational", "encode_tpoly"]


def encode_rational(q) -> str:
    return str(Fraction(q))


def encode_tpoly(p: Poly) -> list[str]:
    coeffs = p.coeffs("t") or [Fraction(0)]
    return [str(c) for c in coeffs]


def _only_t(p: Poly) -> bool:
    return set(p.variables) <= {"t"}


def encode(value):
    """Encode an exact value (or a container of them) into JSON-ready data."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return encode_rational(value)
    if isinstance(value, float):
        return value
    if isinstance(value, MvPolynomial):
        return {
            "d": value.d,
            "terms": [{"x": list(w), "coeff": encode(c)} for w, c in value.terms.items()],
            "text": str(value),
        }
    if isinstance(value, Poly):
        if _only_t(value):
            return encode_tpoly(value)
        return {
            "poly_terms": [
                {"monomial": {n: e for n, e in m}, "coeff": str(c)} for m, c in value.sorted_terms()
            ],
            "text": str(value),
        }
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, str):
        return value
    raise TypeError(f"cannot encode {type(value).__name__}")


def decode(data):
    """Inverse of :func:`encode` for a single exact value."""
    if isinstance(data, str):
        return Fraction(data)
    if isinstance(data, float):
        return data
    if isinstance(data, list):
        return Poly.from_coeffs((Fraction(c) for c in data), "t")
    if isinstance(data, dict):
        if "terms" in data and "d" in data:
            d = data["d"]
            acc = Poly()
            for term in data["terms"]:
                mono = Poly.monomial(dict(zip(xvars(d), term["x"])))
                acc = acc + mono * Poly.coerce(decode(term["coeff"]))
            return MvPolynomial(d, acc)
        if "poly_terms" in data:
            acc = Poly()
            for term in data["poly_terms"]:
                acc = acc + Poly.monomial(term["monomial"], Fraction(term["coeff"]))
            return acc
    raise ValueError(f"cannot decode {data!r}")
