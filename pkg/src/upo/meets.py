"""Finite-completeness data: unit sort, top element, sort product, pairing
maps, and the relational clones they generate.

Every condition is checked exhaustively over base relations and elements;
base-level checks suffice because the bracketed conditions are monotone
under containment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .relcore import (
    Element,
    FinFun,
    FinSet,
    Rel,
    RelError,
    product_finset,
)
from .reports import ReportSet, failed, passed, unknown
from .uord import Predicate, Sort, UOrd, in_downclosure


@dataclass(frozen=True)
class MeetData:
    """The finite-completeness witness for a uniform structure."""

    unit: Sort
    top: Element
    star: dict[tuple[Sort, Sort], Sort]
    wedge: dict[tuple[Sort, Sort], FinFun]

    def star_of(self, i: Sort, j: Sort) -> Sort:
        return self.star[(i, j)]

    def meet(self, i: Sort, j: Sort, a: Element, b: Element) -> Element:
        return self.wedge[(i, j)]((a, b))

    def nfold_sort(self, sorts: tuple[Sort, ...]) -> Sort:
        """Left-associated sort product; the empty product is the unit."""
        if not sorts:
            return self.unit
        out = sorts[0]
        for s in sorts[1:]:
            out = self.star_of(out, s)
        return out

    def nfold_meet(self, sorts: tuple[Sort, ...], elems: tuple[Element, ...]) -> Element:
        """Left-associated meet; the empty meet is the top element."""
        if not elems:
            return self.top
        out = elems[0]
        cur = sorts[0]
        for s, e in zip(sorts[1:], elems[1:]):
            out = self.meet(cur, s, out, e)
            cur = self.star_of(cur, s)
        return out


def semilattice_meets(u: UOrd, meet: Callable[[Element, Element], Element], top: Element) -> MeetData:
    """Meet data for a one-sorted instance from a binary meet and a top."""
    s = u.one_sort()
    car = u.carrier(s)
    pairs = product_finset(car, car)
    return MeetData(
        unit=s,
        top=top,
        star={(s, s): s},
        wedge={(s, s): FinFun.from_map(pairs, car, lambda p: meet(*p))},
    )


def verify_meets(u: UOrd, m: MeetData) -> ReportSet:
    """Check all five finite-completeness conditions exhaustively."""
    rs = ReportSet()

    ok = True
    for (i, j) in sorted(m.wedge, key=repr):
        for (k, l) in sorted(m.wedge, key=repr):
            for r in u.base_at(i, j):
                for s in u.base_at(k, l):
                    img = Rel.from_pairs(
                        u.carrier(m.star_of(i, k)),
                        u.carrier(m.star_of(j, l)),
                        (
                            (m.meet(i, k, a, c), m.meet(j, l, b, d))
                            for a, b in r.pairs()
                            for c, d in s.pairs()
                        ),
                    )
                    if not in_downclosure(img, u, m.star_of(i, k), m.star_of(j, l)):
                        ok = False
                        rs.add(
                            failed(
                                "meets.monotone",
                                "wedge-monotonicity",
                                {"sorts": [i, j, k, l]},
                            )
                        )
    if ok:
        rs.add(passed("meets.monotone", "wedge-monotonicity"))

    for name, law, pairs_of in (
        (
            "meets.proj-left",
            "wedge-below-left",
            lambda i, j: (
                ((m.meet(i, j, a, b), a) for a in u.carrier(i) for b in u.carrier(j)),
                m.star_of(i, j),
                i,
            ),
        ),
        (
            "meets.proj-right",
            "wedge-below-right",
            lambda i, j: (
                ((m.meet(i, j, a, b), b) for a in u.carrier(i) for b in u.carrier(j)),
                m.star_of(i, j),
                j,
            ),
        ),
    ):
        ok = True
        for (i, j) in sorted(m.wedge, key=repr):
            gen, si, sj = pairs_of(i, j)
            rel = Rel.from_pairs(u.carrier(si), u.carrier(sj), gen)
            if not in_downclosure(rel, u, si, sj):
                ok = False
                rs.add(failed(name, law, {"sorts": [i, j]}))
        if ok:
            rs.add(passed(name, law))

    ok = True
    for i in u.sorts:
        if (i, i) not in m.wedge:
            continue
        rel = Rel.from_pairs(
            u.carrier(i),
            u.carrier(m.star_of(i, i)),
            ((a, m.meet(i, i, a, a)) for a in u.carrier(i)),
        )
        if not in_downclosure(rel, u, i, m.star_of(i, i)):
            ok = False
            rs.add(failed("meets.diagonal", "unit-of-meet", {"sort": i}))
    if ok:
        rs.add(passed("meets.diagonal", "unit-of-meet"))

    ok = True
    for i in u.sorts:
        rel = Rel.from_pairs(
            u.carrier(i), u.carrier(m.unit), ((a, m.top) for a in u.carrier(i))
        )
        if not in_downclosure(rel, u, i, m.unit):
            ok = False
            rs.add(failed("meets.top", "top-is-greatest", {"sort": i}))
    if ok:
        rs.add(passed("meets.top", "top-is-greatest"))
    return rs


def injectivity_check(u: UOrd, m: MeetData) -> ReportSet:
    """Pairing maps of a functional finitely complete structure are
    injective.  For non-functional input the lemma's hypothesis fails and
    the check is reported as not applicable."""
    from .uord import is_functional_uord

    rs = ReportSet()
    if not is_functional_uord(u):
        rs.add(
            unknown(
                "meets.injective",
                "pairing-injectivity",
                "not applicable: structure is not functional",
            )
        )
        return rs
    for (i, j), w in sorted(m.wedge.items(), key=repr):
        seen: dict[Element, tuple] = {}
        for ab in w.src.elements:
            v = w(ab)
            if v in seen:
                rs.add(
                    failed(
                        "meets.injective",
                        "pairing-injectivity",
                        {"sorts": [i, j], "first": seen[v], "second": ab},
                    )
                )
                return rs
            seen[v] = ab
    rs.add(passed("meets.injective", "pairing-injectivity"))
    return rs


@dataclass(frozen=True)
class CloneQuery:
    """An (n+1)-ary relation queried for clone membership."""

    input_sorts: tuple[Sort, ...]
    output_sort: Sort
    relation: frozenset  # of (args tuple, value) pairs

    @property
    def arity(self) -> int:
        return len(self.input_sorts)


def projection_query(u: UOrd, sorts: tuple[Sort, ...], l: int) -> CloneQuery:
    """The l-th projection (0-based) as a clone relation."""
    rel = frozenset(
        (args, args[l])
        for args in itertools.product(*(u.carrier(s).elements for s in sorts))
    )
    return CloneQuery(sorts, sorts[l], rel)


def clone_member(u: UOrd, m: MeetData, q: CloneQuery) -> bool:
    """Is the queried relation generated by a base relation through the
    n-fold meet?  The n-fold meet is parenthesized left to right."""
    for args, b in q.relation:
        if len(args) != q.arity:
            raise RelError("clone query arity mismatch")
    isort = m.nfold_sort(q.input_sorts)
    for r in u.base_at(isort, q.output_sort):
        if all(
            r.holds(m.nfold_meet(q.input_sorts, args), b) for args, b in q.relation
        ):
            return True
    return False


def clone_compose(u: UOrd, m: MeetData, s: CloneQuery, rs: list[CloneQuery]) -> CloneQuery:
    """Composite relation: feed the outputs of the r's into s."""
    if len(rs) != s.arity:
        raise RelError("clone composition arity mismatch")
    for r, j in zip(rs, s.input_sorts):
        if r.output_sort != j:
            raise RelError("clone composition sort mismatch")
    in_sorts = rs[0].input_sorts if rs else ()
    for r in rs:
        if r.input_sorts != in_sorts:
            raise RelError("clone composition input sorts differ")
    out = set()
    arg_space = list(itertools.product(*(u.carrier(t).elements for t in in_sorts)))
    for args in arg_space:
        options = [sorted({b for (a, b) in r.relation if a == args}, key=repr) for r in rs]
        for bs, c in s.relation:
            if all(b in opt for b, opt in zip(bs, options)):
                out.add((args, c))
    return CloneQuery(in_sorts, s.output_sort, frozenset(out))


def designated_truth_values(u: UOrd, m: MeetData) -> dict[Sort, tuple[Element, ...]]:
    """Per sort, the elements whose singleton is a nullary clone member:
    those reachable from the top element by a base relation."""
    out = {}
    for i in u.sorts:
        vals = [
            a
            for a in u.carrier(i).elements
            if any(r.holds(m.top, a) for r in u.base_at(m.unit, i))
        ]
        out[i] = tuple(vals)
    return out


def predicate_meet(u: UOrd, m: MeetData, p: Predicate, q: Predicate) -> Predicate:
    """The wedge-composite predicate (the fibrational finite meet)."""
    if p.M != q.M:
        raise RelError("predicates indexed by different sets")
    sort = m.star_of(p.sort, q.sort)
    return Predicate(
        p.M,
        sort,
        FinFun.from_map(
            p.M, u.carrier(sort), lambda x: m.meet(p.sort, q.sort, p.value(x), q.value(x))
        ),
    )


def top_predicate(u: UOrd, m: MeetData, M: FinSet) -> Predicate:
    return Predicate(M, m.unit, FinFun.constant(M, u.carrier(m.unit), m.top))
