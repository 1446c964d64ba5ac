"""Predicates valued in powerset carriers, and the span translation.

A powerset predicate assigns a subset of a carrier to each index; the span
form is a leg into the index set with a plain predicate on its apex.  The
two are interchangeable up to mutual entailment, and existential
quantification is fiberwise union.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from ..meets import MeetData
from ..relcore import Element, FinFun, FinSet, RelError, fs
from ..uord import Predicate, Sort, UOrd
from .power import PowerUOrd, powerset_finset


def dpredicate(du: PowerUOrd, M: FinSet, sort: Sort, values: Iterable[frozenset]) -> Predicate:
    """A predicate on the powerset structure from explicit subset values."""
    car = du.carrier(sort)
    return Predicate(M, sort, FinFun(M, car, tuple(car.index(v) for v in values)))


def values_of(p: Predicate) -> tuple[frozenset, ...]:
    return tuple(p.value(m) for m in p.M)


def top_dpredicate(du: PowerUOrd, m: MeetData, M: FinSet) -> Predicate:
    return dpredicate(du, M, m.unit, (frozenset([m.top]) for _ in M.elements))


def bottom_dpredicate(du: PowerUOrd, M: FinSet, sort: Sort | None = None) -> Predicate:
    sort = du.sorts[0] if sort is None else sort
    return dpredicate(du, M, sort, (frozenset() for _ in M.elements))


def y_image(du: PowerUOrd, p: Predicate) -> Predicate:
    """Singleton-valued powerset predicate from a plain predicate."""
    return dpredicate(du, p.M, p.sort, (frozenset([p.value(m)]) for m in p.M))


def dexists(du: PowerUOrd, p: Predicate, h: FinFun) -> Predicate:
    """Existential quantification along h : M -> N, fiberwise union."""
    if h.src != p.M:
        raise RelError("quantification map must start at the predicate's index set")
    values = []
    for n in h.dst.elements:
        acc: frozenset = frozenset()
        for m in p.M.elements:
            if h(m) == n:
                acc = acc | p.value(m)
        values.append(acc)
    return dpredicate(du, h.dst, p.sort, values)


@dataclass(frozen=True)
class SpanPredicate:
    """A leg u : N -> M with a plain predicate on N (over the source)."""

    leg: FinFun
    pred: Predicate  # over the source structure

    def __post_init__(self) -> None:
        if self.leg.src != self.pred.M:
            raise RelError("span leg and predicate disagree on the apex")


def span_to_powerset(du: PowerUOrd, sp: SpanPredicate) -> Predicate:
    """phi(m) = {psi(n) | leg(n) = m}."""
    values = []
    for m in sp.leg.dst.elements:
        values.append(frozenset(sp.pred.value(n) for n in sp.pred.M.elements if sp.leg(n) == m))
    return dpredicate(du, sp.leg.dst, sp.pred.sort, values)


def powerset_to_span(du: PowerUOrd, p: Predicate) -> SpanPredicate:
    """Apex = pairs (index, member); the leg is the first projection."""
    src = du.source
    apex_elems = tuple(
        (m, a) for m in p.M.elements for a in src.carrier(p.sort).elements if a in p.value(m)
    )
    apex = FinSet(f"el({p.M.name})", apex_elems)
    leg = FinFun.from_map(apex, p.M, lambda e: e[0])
    pred = Predicate(apex, p.sort, FinFun.from_map(apex, src.carrier(p.sort), lambda e: e[1]))
    return SpanPredicate(leg, pred)


def d_meet_data(du: PowerUOrd, m: MeetData) -> MeetData:
    """Finite-completeness data on the powerset structure: pairwise meets
    of members, top = singleton top."""
    star = dict(m.star)
    wedge = {}
    for (i, j), srt in m.star.items():
        src = du.carrier(i)
        dst = du.carrier(j)
        out = du.carrier(srt)
        from ..relcore import product_finset

        pairs = product_finset(src, dst)
        wedge[(i, j)] = FinFun.from_map(
            pairs,
            out,
            lambda mn, i=i, j=j: frozenset(
                m.meet(i, j, a, b) for a in mn[0] for b in mn[1]
            ),
        )
    return MeetData(unit=m.unit, top=frozenset([m.top]), star=star, wedge=wedge)
