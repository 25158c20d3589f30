"""Multi-indices, componentwise binomials and multipartite partitions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb, factorial as _factorial, prod
from typing import Iterable, Iterator, Sequence

__all__ = [
    "MultiIndex",
    "MultiIndexPartition",
    "total_degree",
    "binomial",
    "sub_indices",
    "indices_up_to",
    "partitions",
    "falling_factorial",
]


class MultiIndex(tuple):
    """Exponent vector v in N_0^d.

    Ordering inherited from ``tuple`` is lexicographic; the componentwise
    partial order is :meth:`dominated_by`.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 0:
                raise ValueError(f"multi-index entries must be nonnegative integers, got {parts!r}")
        if not parts:
            raise ValueError("multi-index needs dimension d >= 1")
        return super().__new__(cls, parts)

    @classmethod
    def zero(cls, d: int) -> "MultiIndex":
        return cls((0,) * d)

    @classmethod
    def unit(cls, d: int, i: int) -> "MultiIndex":
        return cls(1 if j == i else 0 for j in range(d))

    @property
    def d(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        """Total degree |v|."""
        return sum(self)

    @property
    def factorial(self) -> int:
        """v! = v_1! ... v_d!."""
        return prod(_factorial(p) for p in self)

    def is_zero(self) -> bool:
        return not any(self)

    def dominated_by(self, other: Sequence[int]) -> bool:
        """Componentwise ``self <= other``."""
        _check_dims(self, other)
        return all(a <= b for a, b in zip(self, other))

    def __add__(self, other):
        _check_dims(self, other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_dims(self, other)
        return MultiIndex(a - b for a, b in zip(self, other))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return MultiIndex(k * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"MultiIndex({tuple(self)!r})"


def _check_dims(v: Sequence[int], k: Sequence[int]) -> None:
    if len(v) != len(k):
        raise ValueError(f"dimension mismatch: {len(v)} != {len(k)}")


def total_degree(v: Sequence[int]) -> int:
    return sum(v)


def binomial(v: Sequence[int], k: Sequence[int]) -> int:
    """Product of componentwise binomial coefficients, 0 unless k <= v."""
    _check_dims(v, k)
    return prod(comb(a, b) for a, b in zip(v, k))


@lru_cache(maxsize=None)
def _sub_indices(v: tuple[int, ...]) -> tuple[MultiIndex, ...]:
    return tuple(MultiIndex(k) for k in product(*(range(p + 1) for p in v)))


def sub_indices(v: Sequence[int]) -> tuple[MultiIndex, ...]:
    """All k with 0 <= k <= v componentwise, in lexicographic order."""
    return _sub_indices(tuple(MultiIndex(v)))


def indices_up_to(d: int, max_degree: int) -> list[MultiIndex]:
    """All v in N_0^d with |v| <= max_degree, lexicographically sorted."""
    if d < 1:
        raise ValueError("d must be >= 1")
    out = [MultiIndex(p) for p in product(range(max_degree + 1), repeat=d) if sum(p) <= max_degree]
    out.sort()
    return out


@dataclass(frozen=True)
class MultiIndexPartition:
    """A multiset of nonzero multi-indices, stored as distinct lex-ascending columns.

    ``multiplicities[j]`` counts how often ``columns[j]`` occurs.
    """

    columns: tuple[MultiIndex, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != len(self.multiplicities) or not self.columns:
            raise ValueError("columns and multiplicities must be nonempty and of equal length")
        d = self.columns[0].d
        for c in self.columns:
            if c.d != d or c.is_zero():
                raise ValueError(f"bad column {c!r}")
        if any(a >= b for a, b in zip(self.columns, self.columns[1:])):
            raise ValueError("columns must be strictly increasing in lexicographic order")
        if any(r < 1 for r in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    @property
    def length(self) -> int:
        """l(lambda): number of columns counted with multiplicity."""
        return sum(self.multiplicities)

    @property
    def multiplicity_factorial(self) -> int:
        """m(lambda)! = r_1! r_2! ..."""
        return prod(_factorial(r) for r in self.multiplicities)

    @property
    def factorial(self) -> int:
        """lambda! = prod_j (column_j!)^{r_j}."""
        return prod(c.factorial ** r for c, r in zip(self.columns, self.multiplicities))

    def total(self) -> MultiIndex:
        acc = MultiIndex.zero(self.columns[0].d)
        for c, r in zip(self.columns, self.multiplicities):
            acc = acc + r * c
        return acc

    def coefficient(self) -> int:
        """v! / (m(lambda)! lambda!); always an integer."""
        num = self.total().factorial
        den = self.multiplicity_factorial * self.factorial
        q, rem = divmod(num, den)
        assert rem == 0
        return q

    def expanded(self) -> list[MultiIndex]:
        return [c for c, r in zip(self.columns, self.multiplicities) for _ in range(r)]

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]]) -> "MultiIndexPartition":
        counts: dict[MultiIndex, int] = {}
        for c in cols:
            c = MultiIndex(c)
            counts[c] = counts.get(c, 0) + 1
        keys = sorted(counts)
        return cls(tuple(keys), tuple(counts[k] for k in keys))


def _descend(remaining: MultiIndex, bound: MultiIndex | None) -> Iterator[list[MultiIndex]]:
    if remaining.is_zero():
        yield []
        return
    for col in reversed(sub_indices(remaining)):
        if col.is_zero():
            continue
        if bound is not None and col > bound:
            continue
        for rest in _descend(remaining - col, col):
            yield [col] + rest


@lru_cache(maxsize=4096)
def _partitions(v: MultiIndex) -> tuple[MultiIndexPartition, ...]:
    return tuple(MultiIndexPartition.from_columns(cols) for cols in _descend(v, None))


def partitions(v: Sequence[int]) -> tuple[MultiIndexPartition, ...]:
    """Every multipartite partition of v, each exactly once.

    Columns are picked largest-first in lex-decreasing order, so the output
    is already canonical and arrives reverse-lexicographically by largest
    column.
    """
    v = MultiIndex(v)
    if v.degree == 0:
        raise ValueError("the zero multi-index has no (nonempty) partitions")
    return _partitions(v)


def falling_factorial(t, k: int):
    """(t)_k = t (t-1) ... (t-k+1); works for rationals and ring elements."""
    if k < 0:
        raise ValueError("k must be >= 0")
    acc = 1
    for j in range(k):
        acc = acc * (t - j)
    return acc
