"""Universal quantification and implication, supplied on a source structure
and lifted to its powerset completion.

A universal-quantification algebra is given by explicit tables (a big-meet
per sort); it is audited as a right adjoint to the singleton unit of the
dual monad.  Implication data is audited by residuation.  The lifts follow
the subset-of-unions formula for the big meet and the total-relation formula
for implication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from ..meets import MeetData, predicate_meet, top_predicate
from ..relcore import Element, FinFun, FinSet, Rel, RelError, fs
from ..reports import ReportSet, failed, passed
from ..uord import Predicate, Sort, UOrd, all_predicates, entails, in_downclosure
from .dpred import dpredicate, values_of
from .power import PowerUOrd, build_U, cobracket_holds


@dataclass(frozen=True)
class UAlgebraData:
    """A choice of big meets: one sort reassignment and one P(A_i) -> A_pi(i)
    table per sort."""

    on_sorts: dict[Sort, Sort]
    meet_all: dict[Sort, Callable[[frozenset], Element]]

    def sort(self, i: Sort) -> Sort:
        return self.on_sorts[i]

    def of(self, i: Sort, subset: frozenset) -> Element:
        return self.meet_all[i](subset)


@dataclass(frozen=True)
class ImpliesData:
    """A choice of implication sorts and tables."""

    arrow: dict[tuple[Sort, Sort], Sort]
    table: dict[tuple[Sort, Sort], Callable[[Element, Element], Element]]

    def sort(self, i: Sort, j: Sort) -> Sort:
        return self.arrow[(i, j)]

    def of(self, i: Sort, j: Sort, a: Element, b: Element) -> Element:
        return self.table[(i, j)](a, b)


def semilattice_u_algebra(
    u: UOrd, m: MeetData, meet: Callable[[Element, Element], Element]
) -> UAlgebraData:
    """Big meets on a one-sorted instance by folding the binary meet."""
    s = u.one_sort()

    def meet_all(subset: frozenset) -> Element:
        out = m.top
        for a in sorted(subset, key=u.carrier(s).index):
            out = meet(out, a)
        return out

    return UAlgebraData({s: s}, {s: meet_all})


def semilattice_implies(u: UOrd, imp: Callable[[Element, Element], Element]) -> ImpliesData:
    s = u.one_sort()
    return ImpliesData({(s, s): s}, {(s, s): imp})


def audit_u_algebra(u: UOrd, alg: UAlgebraData) -> ReportSet:
    """The big meet must be monotone for the dual bracket, split the
    singleton unit, and sit right adjoint to it."""
    rs = ReportSet()
    uu = build_U(u)

    ok = True
    for (i, j), rels in sorted(u.base.items(), key=repr):
        for r in rels:
            pairs = [
                (alg.of(i, M), alg.of(j, N))
                for M in uu.carrier(i).elements
                for N in uu.carrier(j).elements
                if cobracket_holds(r, M, N)
            ]
            rel = Rel.from_pairs(
                u.carrier(alg.sort(i)), u.carrier(alg.sort(j)), pairs
            )
            if not in_downclosure(rel, u, alg.sort(i), alg.sort(j)):
                ok = False
                rs.add(failed("u.algebra.monotone", "big-meet-monotone", {"sorts": [i, j]}))
    if ok:
        rs.add(passed("u.algebra.monotone", "big-meet-monotone"))

    ok = True
    for i in u.sorts:
        fwd = Rel.from_pairs(
            u.carrier(alg.sort(i)),
            u.carrier(i),
            ((alg.of(i, frozenset([a])), a) for a in u.carrier(i).elements),
        )
        bwd = Rel.from_pairs(
            u.carrier(i),
            u.carrier(alg.sort(i)),
            ((a, alg.of(i, frozenset([a]))) for a in u.carrier(i).elements),
        )
        if not (
            in_downclosure(fwd, u, alg.sort(i), i)
            and in_downclosure(bwd, u, i, alg.sort(i))
        ):
            ok = False
            rs.add(failed("u.algebra.unit-split", "big-meet-splits-unit", {"sort": i}))
    if ok:
        rs.add(passed("u.algebra.unit-split", "big-meet-splits-unit"))

    # counit of the dual adjunction: singleton of the big meet sits below
    # the identity in the dual bracket order
    ok = True
    for i in u.sorts:
        found = any(
            all(
                all(r.holds(alg.of(i, M), n) for n in M)
                for M in uu.carrier(i).elements
            )
            for r in u.base_at(alg.sort(i), i)
        )
        if not found:
            ok = False
            rs.add(failed("u.algebra.adjunction", "unit-after-big-meet-below-identity", {"sort": i}))
    if ok:
        rs.add(passed("u.algebra.adjunction", "unit-after-big-meet-below-identity"))
    return rs


def lifted_meet_all(alg: UAlgebraData, i: Sort) -> Callable[[frozenset], frozenset]:
    """Big meet on the powerset level: all big meets of choice sets."""

    def meet(family: frozenset) -> frozenset:
        union: frozenset = frozenset()
        for member in family:
            union = union | member
        out = set()
        for size in range(len(union) + 1):
            for combo in itertools.combinations(sorted(union, key=repr), size):
                chosen = frozenset(combo)
                if all(chosen & member for member in family):
                    out.add(alg.of(i, chosen))
        return frozenset(out)

    return meet


def forall_along(
    du: PowerUOrd, alg: UAlgebraData, p: Predicate, h: FinFun
) -> Predicate:
    """Universal quantification along h : M -> N on powerset predicates."""
    if h.src != p.M:
        raise RelError("quantification map must start at the predicate's index set")
    lifted = lifted_meet_all(alg, p.sort)
    values = []
    for n in h.dst.elements:
        family = frozenset(p.value(m) for m in p.M.elements if h(m) == n)
        values.append(lifted(family))
    return dpredicate(du, h.dst, alg.sort(p.sort), values)


def _total_relations(src: tuple, dst: tuple):
    """All total relations between two finite tuples of elements."""
    if not src:
        yield frozenset()
        return
    choices = []
    for size in range(1, len(dst) + 1):
        choices.extend(frozenset(c) for c in itertools.combinations(dst, size))
    for combo in itertools.product(choices, repeat=len(src)):
        yield frozenset((a, b) for a, picks in zip(src, combo) for b in picks)


def implies_on(
    du: PowerUOrd,
    alg: UAlgebraData,
    imp: ImpliesData,
    p: Predicate,
    q: Predicate,
) -> Predicate:
    """Implication on powerset predicates: per index, big meets of the
    pointwise implications along every total relation between the value
    sets."""
    if p.M != q.M:
        raise RelError("predicates indexed by different sets")
    i, j = p.sort, q.sort
    arrow_sort = imp.sort(i, j)
    out_sort = alg.sort(arrow_sort)
    src = du.source
    values = []
    for m in p.M.elements:
        pv = tuple(sorted(p.value(m), key=src.carrier(i).index))
        qv = tuple(sorted(q.value(m), key=src.carrier(j).index))
        vals = set()
        for t in _total_relations(pv, qv):
            vals.add(alg.of(arrow_sort, frozenset(imp.of(i, j, a, b) for a, b in t)))
        values.append(frozenset(vals))
    return dpredicate(du, p.M, out_sort, values)


def audit_source_implies(u: UOrd, m: MeetData, imp: ImpliesData, max_index: int = 2) -> ReportSet:
    """Residuation for the supplied implication tables, read fibrationally
    on small index sets."""
    rs = ReportSet()
    ok = True
    for size in range(1, max_index + 1):
        M = fs("M", list(range(size)))
        preds = list(all_predicates(u, M))
        for p in preds:
            for q in preds:
                if (p.sort, q.sort) not in imp.arrow:
                    continue
                pq = Predicate(
                    M,
                    imp.sort(p.sort, q.sort),
                    FinFun.from_map(
                        M,
                        u.carrier(imp.sort(p.sort, q.sort)),
                        lambda x: imp.of(p.sort, q.sort, p.value(x), q.value(x)),
                    ),
                )
                for chi in preds:
                    lhs = entails(u, chi, pq)
                    rhs = entails(u, predicate_meet(u, m, chi, p), q)
                    if lhs != rhs:
                        ok = False
                        rs.add(
                            failed(
                                "implies.residuation",
                                "implication-residuation",
                                {
                                    "index": size,
                                    "chi": [chi.value(x) for x in M],
                                    "p": [p.value(x) for x in M],
                                    "q": [q.value(x) for x in M],
                                },
                            )
                        )
                        return rs
    if ok:
        rs.add(passed("implies.residuation", "implication-residuation"))
    return rs
