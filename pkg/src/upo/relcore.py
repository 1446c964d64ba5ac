"""Finite sets and exact binary-relation algebra.

Everything here is immutable after construction and safe to share across
workers.  Relations are stored as dense boolean matrices (one packed bitmask
per source row), which is fine for the carrier sizes this library targets
(a few dozen elements at most).  All searches return the lexicographically
least witness so that outputs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

Element = Hashable


class RelError(ValueError):
    """Raised on carrier or dimension mismatches."""


@dataclass(frozen=True)
class FinSet:
    """An ordered finite set of pairwise distinct element labels.

    The element order is part of the data: it fixes the meaning of matrix
    indices and makes witnesses deterministic across runs.
    """

    name: str
    elements: tuple[Element, ...]
    _index: dict[Element, int] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise RelError(f"duplicate elements in FinSet {self.name!r}")
        object.__setattr__(self, "_index", idx)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, e: Element) -> bool:
        return e in self._index

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise RelError(f"{e!r} is not an element of {self.name!r}") from None

    def __hash__(self) -> int:
        return hash((self.name, self.elements))


def fs(name: str, elements: Iterable[Element]) -> FinSet:
    """Shorthand constructor for a FinSet."""
    return FinSet(name, tuple(elements))


def product_finset(a: FinSet, b: FinSet, name: str | None = None) -> FinSet:
    """Cartesian product with lexicographic element order (a-major)."""
    elems = tuple((x, y) for x in a.elements for y in b.elements)
    return FinSet(name or f"({a.name}*{b.name})", elems)


def tuple_finset(factors: Sequence[FinSet], name: str | None = None) -> FinSet:
    """n-ary lexicographic product; the empty product is the one-point set."""
    elems = tuple(itertools.product(*(f.elements for f in factors)))
    return FinSet(name or "(" + "*".join(f.name for f in factors) + ")", elems)


@dataclass(frozen=True)
class Rel:
    """A binary relation src -> dst as a dense boolean matrix.

    ``rows[i]`` is the bitmask of dst indices related to src element i.
    """

    src: FinSet
    dst: FinSet
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.src):
            raise RelError("row count does not match source carrier")
        full = (1 << len(self.dst)) - 1
        if any(r & ~full for r in self.rows):
            raise RelError("matrix wider than target carrier")

    @staticmethod
    def from_pairs(src: FinSet, dst: FinSet, pairs: Iterable[tuple[Element, Element]]) -> Rel:
        rows = [0] * len(src)
        for a, b in pairs:
            rows[src.index(a)] |= 1 << dst.index(b)
        return Rel(src, dst, tuple(rows))

    @staticmethod
    def identity(a: FinSet) -> Rel:
        return Rel(a, a, tuple(1 << i for i in range(len(a))))

    @staticmethod
    def empty(src: FinSet, dst: FinSet) -> Rel:
        return Rel(src, dst, (0,) * len(src))

    @staticmethod
    def full(src: FinSet, dst: FinSet) -> Rel:
        return Rel(src, dst, ((1 << len(dst)) - 1,) * len(src))

    def holds(self, a: Element, b: Element) -> bool:
        return bool(self.rows[self.src.index(a)] >> self.dst.index(b) & 1)

    def pairs(self) -> Iterator[tuple[Element, Element]]:
        """All related pairs in (src, dst) lexicographic order."""
        for i, row in enumerate(self.rows):
            a = self.src.elements[i]
            j = 0
            while row:
                if row & 1:
                    yield (a, self.dst.elements[j])
                row >>= 1
                j += 1

    def count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def image_of(self, a: Element) -> tuple[Element, ...]:
        row = self.rows[self.src.index(a)]
        return tuple(
            self.dst.elements[j] for j in range(len(self.dst)) if row >> j & 1
        )

    def union(self, other: Rel) -> Rel:
        _check_same_carriers(self, other)
        return Rel(self.src, self.dst, tuple(r | s for r, s in zip(self.rows, other.rows)))

    def intersection(self, other: Rel) -> Rel:
        _check_same_carriers(self, other)
        return Rel(self.src, self.dst, tuple(r & s for r, s in zip(self.rows, other.rows)))

    def is_functional(self) -> bool:
        """At most one image per source element."""
        return all(r.bit_count() <= 1 for r in self.rows)

    def is_total(self) -> bool:
        return all(r != 0 for r in self.rows)

    def is_reflexive(self) -> bool:
        if self.src is not self.dst and self.src != self.dst:
            return False
        return all(self.rows[i] >> i & 1 for i in range(len(self.src)))

    def is_transitive(self) -> bool:
        return contained(compose(self, self), self)

    def __str__(self) -> str:
        body = ", ".join(f"({a!r},{b!r})" for a, b in self.pairs())
        return f"Rel[{self.src.name}->{self.dst.name}]{{{body}}}"


def _check_same_carriers(r: Rel, s: Rel) -> None:
    if r.src != s.src or r.dst != s.dst:
        raise RelError("relations live on different carriers")


def compose(r: Rel, s: Rel) -> Rel:
    """Relational composite: (a, c) related iff some b has r(a,b) and s(b,c).

    Written in diagrammatic order: ``compose(r, s)`` applies r first.
    """
    if r.dst != s.src:
        raise RelError(
            f"cannot compose {r.src.name}->{r.dst.name} with {s.src.name}->{s.dst.name}"
        )
    out = []
    for row in r.rows:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc |= s.rows[j]
            row >>= 1
            j += 1
        out.append(acc)
    return Rel(r.src, s.dst, tuple(out))


def opposite(r: Rel) -> Rel:
    """Transpose: (b, a) related iff r(a, b)."""
    rows = [0] * len(r.dst)
    for i, row in enumerate(r.rows):
        j = 0
        while row:
            if row & 1:
                rows[j] |= 1 << i
            row >>= 1
            j += 1
    return Rel(r.dst, r.src, tuple(rows))


def contained(r: Rel, s: Rel) -> bool:
    """Matrix-wise implication r <= s (same carriers required)."""
    _check_same_carriers(r, s)
    return all(row & ~srow == 0 for row, srow in zip(r.rows, s.rows))


def box_product(r: Rel, s: Rel, src: FinSet | None = None, dst: FinSet | None = None) -> Rel:
    """Componentwise product: ((a,c),(b,d)) related iff r(a,b) and s(c,d).

    Product carriers are materialized lexicographically unless supplied.
    """
    src = src or product_finset(r.src, s.src)
    dst = dst or product_finset(r.dst, s.dst)
    nd = len(s.dst)
    rows = []
    for ra in r.rows:
        for rc in s.rows:
            acc = 0
            row, j = ra, 0
            while row:
                if row & 1:
                    acc |= rc << (j * nd)
                row >>= 1
                j += 1
            rows.append(acc)
    return Rel(src, dst, tuple(rows))


@dataclass(frozen=True)
class FinFun:
    """A total function between finite sets, stored as an index table."""

    src: FinSet
    dst: FinSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != len(self.src):
            raise RelError("table length does not match source carrier")
        if any(not 0 <= t < len(self.dst) for t in self.table):
            raise RelError("table entry out of range")

    @staticmethod
    def from_map(src: FinSet, dst: FinSet, f: Callable[[Element], Element]) -> FinFun:
        return FinFun(src, dst, tuple(dst.index(f(e)) for e in src.elements))

    @staticmethod
    def from_dict(src: FinSet, dst: FinSet, d: dict[Any, Any]) -> FinFun:
        return FinFun(src, dst, tuple(dst.index(d[e]) for e in src.elements))

    @staticmethod
    def identity(a: FinSet) -> FinFun:
        return FinFun(a, a, tuple(range(len(a))))

    @staticmethod
    def constant(src: FinSet, dst: FinSet, value: Element) -> FinFun:
        return FinFun(src, dst, (dst.index(value),) * len(src))

    def __call__(self, e: Element) -> Element:
        return self.dst.elements[self.table[self.src.index(e)]]

    def then(self, g: FinFun) -> FinFun:
        if self.dst != g.src:
            raise RelError("composition carrier mismatch")
        return FinFun(self.src, g.dst, tuple(g.table[t] for t in self.table))

    def is_surjective(self) -> bool:
        return len(set(self.table)) == len(self.dst)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.src)


def graph(f: FinFun) -> Rel:
    """The graph of a function as a relation."""
    return Rel(f.src, f.dst, tuple(1 << t for t in f.table))


def image_relation(f: FinFun, g: FinFun, r: Rel) -> Rel:
    """Push a relation forward along functions on both sides:
    {(f a, g b) | r(a, b)}."""
    if f.src != r.src or g.src != r.dst:
        raise RelError("image_relation carrier mismatch")
    rows = [0] * len(f.dst)
    for i, row in enumerate(r.rows):
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc |= 1 << g.table[j]
            row >>= 1
            j += 1
        rows[f.table[i]] |= acc
    return Rel(f.dst, g.dst, tuple(rows))


def all_relations(src: FinSet, dst: FinSet) -> Iterator[Rel]:
    """All relations src -> dst, in a deterministic (bitmask-lex) order."""
    n = len(src) * len(dst)
    nd = len(dst)
    mask = (1 << nd) - 1
    for code in range(1 << n):
        rows = tuple((code >> (i * nd)) & mask for i in range(len(src)))
        yield Rel(src, dst, rows)


def all_functions(src: FinSet, dst: FinSet) -> Iterator[FinFun]:
    """All total functions src -> dst, in lexicographic table order."""
    for table in itertools.product(range(len(dst)), repeat=len(src)):
        yield FinFun(src, dst, table)


def all_surjections(src: FinSet, dst: FinSet) -> Iterator[FinFun]:
    for f in all_functions(src, dst):
        if f.is_surjective():
            yield f
