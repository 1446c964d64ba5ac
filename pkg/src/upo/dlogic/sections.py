"""The subset triad on powerset structures (gamma, delta, pi), the frame
audit for the powerset completion, and the geometric-inclusion audit for
algebra-equipped structures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from ..meets import MeetData, verify_meets
from ..relcore import Element, FinFun, FinSet, Rel, RelError, fs
from ..reports import ReportSet, failed, passed, unknown
from ..uord import (
    MonotoneMap,
    Predicate,
    Sort,
    UOrd,
    all_predicates,
    entails,
    in_downclosure,
)
from .dpred import (
    bottom_dpredicate,
    d_meet_data,
    dexists,
    dpredicate,
    top_dpredicate,
    y_image,
)
from .power import PowerUOrd, build_D, d_covered, eta_map, mu_fun, mu_map


def gamma(u: UOrd, m: MeetData, p: Predicate) -> frozenset:
    """Indices whose value is reachable from the top by a single base
    relation (the pointwise-truth subset)."""
    base = u.base_at(m.unit, p.sort)
    return frozenset(
        x for x in p.M.elements if any(r.holds(m.top, p.value(x)) for r in base)
    )


def gamma_d(du: PowerUOrd, m: MeetData, p: Predicate) -> frozenset:
    """Gamma on the powerset structure: some member of the value set is
    reachable from the top."""
    base = du.source.base_at(m.unit, p.sort)
    return frozenset(
        x
        for x in p.M.elements
        if any(any(r.holds(m.top, v) for v in p.value(x)) for r in base)
    )


def delta_subset(du: PowerUOrd, m: MeetData, M: FinSet, subset: frozenset) -> Predicate:
    """The constant-truth predicate on a subset: existential of the top
    along the inclusion."""
    top = frozenset([m.top])
    return dpredicate(
        du, M, m.unit, (top if x in subset else frozenset() for x in M.elements)
    )


def pi_support(p: Predicate) -> frozenset:
    """Left adjoint to delta: the support of a powerset predicate (the image
    of the span leg)."""
    return frozenset(x for x in p.M.elements if p.value(x))


def d_meet(du: PowerUOrd, m: MeetData, p: Predicate, q: Predicate) -> Predicate:
    """Fiberwise meet on powerset predicates: pairwise meets of members."""
    if p.M != q.M:
        raise RelError("predicates indexed by different sets")
    sort = m.star_of(p.sort, q.sort)
    return dpredicate(
        du,
        p.M,
        sort,
        (
            frozenset(
                m.meet(p.sort, q.sort, a, b) for a in p.value(x) for b in q.value(x)
            )
            for x in p.M.elements
        ),
    )


def total_connectedness_audit(
    du: PowerUOrd, m: MeetData, max_index: int = 3
) -> ReportSet:
    """pi -| delta is a reflection, delta is order reflecting, pi preserves
    finite meets; exhaustive over predicates on index sets up to
    ``max_index``."""
    rs = ReportSet()
    adjunction = reflection = orderrefl = meets_ok = True
    for size in range(max_index + 1):
        M = fs("M", list(range(size)))
        subsets = [
            frozenset(c)
            for k in range(size + 1)
            for c in itertools.combinations(M.elements, k)
        ]
        preds = list(all_predicates(du, M))
        for U in subsets:
            dU = delta_subset(du, m, M, U)
            if pi_support(dU) != U:
                reflection = False
                rs.add(failed("d.connected.reflection", "pi-after-delta-identity", {"U": U}))
            for V in subsets:
                if entails(du, dU, delta_subset(du, m, M, V)) and not U <= V:
                    orderrefl = False
                    rs.add(
                        failed(
                            "d.connected.delta-reflects",
                            "delta-order-reflecting",
                            {"U": U, "V": V},
                        )
                    )
        for p in preds:
            sup = pi_support(p)
            for U in subsets:
                lhs = sup <= U
                rhs = entails(du, p, delta_subset(du, m, M, U))
                if lhs != rhs:
                    adjunction = False
                    rs.add(
                        failed(
                            "d.connected.adjunction",
                            "pi-left-adjoint-delta",
                            {"values": [p.value(x) for x in M], "U": U},
                        )
                    )
        for p in preds:
            for q in preds:
                if pi_support(d_meet(du, m, p, q)) != pi_support(p) & pi_support(q):
                    meets_ok = False
                    rs.add(
                        failed(
                            "d.connected.pi-meets",
                            "pi-preserves-meets",
                            {
                                "p": [p.value(x) for x in M],
                                "q": [q.value(x) for x in M],
                            },
                        )
                    )
        if pi_support(top_dpredicate(du, m, M)) != frozenset(M.elements):
            meets_ok = False
            rs.add(failed("d.connected.pi-meets", "pi-preserves-top", {"index": size}))
    if adjunction:
        rs.add(passed("d.connected.adjunction", "pi-left-adjoint-delta"))
    if reflection:
        rs.add(passed("d.connected.reflection", "pi-after-delta-identity"))
    if orderrefl:
        rs.add(passed("d.connected.delta-reflects", "delta-order-reflecting"))
    if meets_ok:
        rs.add(passed("d.connected.pi-meets", "pi-preserves-meets"))
    return rs


# --- frame audit ------------------------------------------------------------


def y_embed(u: UOrd, m: MeetData, du: PowerUOrd | None = None) -> MonotoneMap:
    du = du or build_D(u)
    return eta_map(u, du)


def frame_audit(u: UOrd, m: MeetData, du: PowerUOrd | None = None, max_index: int = 2) -> ReportSet:
    """The powerset completion is a fibered frame over the source meets:
    finite meets, singleton embedding preserving them and order-reflecting,
    union as existential quantification with Frobenius and Beck-Chevalley,
    and the pre-stack condition.  Exhaustive over predicates on index sets
    up to ``max_index``."""
    rs = ReportSet()
    du = du or build_D(u)
    dm = d_meet_data(du, m)
    rs.extend(verify_meets(du, dm))

    ok = True
    for (i, j), srt in sorted(m.star.items(), key=repr):
        for a in u.carrier(i).elements:
            for b in u.carrier(j).elements:
                lhs = dm.meet(i, j, frozenset([a]), frozenset([b]))
                rhs = frozenset([m.meet(i, j, a, b)])
                if lhs != rhs:
                    ok = False
                    rs.add(
                        failed("d.frame.y-meets", "embedding-preserves-meets", {"a": a, "b": b})
                    )
    if ok:
        rs.add(passed("d.frame.y-meets", "embedding-preserves-meets"))

    ok = True
    for size in range(1, max_index + 1):
        M = fs("M", list(range(size)))
        for p in all_predicates(u, M):
            for q in all_predicates(u, M):
                if entails(du, y_image(du, p), y_image(du, q)) != entails(u, p, q):
                    ok = False
                    rs.add(
                        failed(
                            "d.frame.y-reflects",
                            "embedding-order-reflecting",
                            {
                                "p": [p.value(x) for x in M],
                                "q": [q.value(x) for x in M],
                            },
                        )
                    )
    if ok:
        rs.add(passed("d.frame.y-reflects", "embedding-order-reflecting"))

    adj = frob = bc = prestack = True
    sizes = range(1, max_index + 1)
    for msize in sizes:
        M = fs("M", list(range(msize)))
        mpreds = list(all_predicates(du, M))
        for nsize in sizes:
            N = fs("N", list(range(nsize)))
            npreds = list(all_predicates(du, N))
            from ..relcore import all_functions

            for h in all_functions(N, M):
                for psi in npreds:
                    ex = dexists(du, psi, h)
                    for phi in mpreds:
                        if entails(du, ex, phi) != entails(du, psi, phi.reindex(h)):
                            adj = False
                            rs.add(
                                failed(
                                    "d.frame.exists-adjoint",
                                    "union-left-adjoint-reindexing",
                                    {"h": list(h.table)},
                                )
                            )
                        lhs = d_meet(du, m, phi, ex)
                        rhs = dexists(du, d_meet(du, m, phi.reindex(h), psi), h)
                        if not (entails(du, lhs, rhs) and entails(du, rhs, lhs)):
                            frob = False
                            rs.add(
                                failed(
                                    "d.frame.frobenius",
                                    "frobenius-reciprocity",
                                    {"h": list(h.table)},
                                )
                            )
                if msize <= 2 and nsize <= 2:
                    for v in all_functions(N, M):
                        pb_elems = tuple(
                            (a, b)
                            for a in N.elements
                            for b in N.elements
                            if h(a) == v(b)
                        )
                        P = FinSet("pb", pb_elems)
                        pr1 = FinFun.from_map(P, N, lambda e: e[0])
                        pr2 = FinFun.from_map(P, N, lambda e: e[1])
                        for psi in npreds:
                            lhs = dexists(du, psi, h).reindex(v)
                            rhs = dexists(du, psi.reindex(pr1), pr2)
                            if not (entails(du, lhs, rhs) and entails(du, rhs, lhs)):
                                bc = False
                                rs.add(
                                    failed(
                                        "d.frame.beck-chevalley",
                                        "quantification-commutes-with-reindexing",
                                        {"h": list(h.table), "v": list(v.table)},
                                    )
                                )
                surjs = [e for e in all_functions(N, M) if e.is_surjective()]
                for e in surjs:
                    for p1 in mpreds:
                        for p2 in mpreds:
                            if entails(du, p1.reindex(e), p2.reindex(e)) and not entails(du, p1, p2):
                                prestack = False
                                rs.add(
                                    failed(
                                        "d.frame.prestack",
                                        "surjective-reindexing-reflects",
                                        {"e": list(e.table)},
                                    )
                                )
    if adj:
        rs.add(passed("d.frame.exists-adjoint", "union-left-adjoint-reindexing"))
    if frob:
        rs.add(passed("d.frame.frobenius", "frobenius-reciprocity"))
    if bc:
        rs.add(passed("d.frame.beck-chevalley", "quantification-commutes-with-reindexing"))
    if prestack:
        rs.add(passed("d.frame.prestack", "surjective-reindexing-reflects"))

    rs.extend(internal_frobenius_rectangle(u, m, du))
    return rs


def internal_frobenius_rectangle(u: UOrd, m: MeetData, du: PowerUOrd) -> ReportSet:
    """The two paths of the internalized Frobenius rectangle for the free
    frame (the powerset structure with union as its algebra), compared for
    mutual order.

    If the fibered Frobenius law and this rectangle ever disagree on an
    instance, both reports surface it; nothing is reconciled silently."""
    dm = d_meet_data(du, m)
    return rectangle_audit(du, dm, lambda sort, fam: mu_fun(fam), cap=2)


def rectangle_audit(
    frame_u: UOrd,
    frame_meets: MeetData,
    algebra,
    cap: int = 2,
) -> ReportSet:
    """Compare `element /\\ (algebra of family)` with `algebra of the
    pointwise meets` as maps into the frame carrier."""
    rs = ReportSet()
    ok = True
    for (i, j), srt in sorted(frame_meets.star.items(), key=repr):
        members = list(frame_u.carrier(j).elements)
        families = [
            frozenset(c)
            for k in range(min(len(members), cap) + 1)
            for c in itertools.combinations(members, k)
        ]
        fwd, bwd = [], []
        for a in frame_u.carrier(i).elements:
            for fam in families:
                top_path = algebra(
                    srt, frozenset(frame_meets.meet(i, j, a, n) for n in fam)
                )
                bot_path = frame_meets.meet(i, j, a, algebra(j, fam))
                fwd.append((top_path, bot_path))
                bwd.append((bot_path, top_path))
        car = frame_u.carrier(srt)
        if not (
            in_downclosure(Rel.from_pairs(car, car, fwd), frame_u, srt, srt)
            and in_downclosure(Rel.from_pairs(car, car, bwd), frame_u, srt, srt)
        ):
            ok = False
            rs.add(failed("d.frame.rectangle", "internal-frobenius-rectangle", {"sorts": [i, j]}))
    if ok:
        rs.add(passed("d.frame.rectangle", "internal-frobenius-rectangle"))
    return rs


@dataclass
class UniformFrame:
    """An algebra-equipped finitely complete structure."""

    u: UOrd
    meets: MeetData
    du: PowerUOrd
    structure: MonotoneMap  # du -> u


def frame_of_D(u: UOrd, m: MeetData) -> UniformFrame:
    """The free frame on a finitely complete structure: carriers are
    powersets, the algebra is the union."""
    du = build_D(u)
    ddu = build_D(du)
    return UniformFrame(u=du, meets=d_meet_data(du, m), du=ddu, structure=mu_map(ddu, du))


def geometric_inclusion_audit(frame: UniformFrame) -> ReportSet:
    """The algebra is left adjoint to the singleton embedding, splits it,
    and preserves finite meets."""
    rs = ReportSet()
    u, m, du, alg = frame.u, frame.meets, frame.du, frame.structure

    ok = True
    for i in u.sorts:
        pairs = [(x, frozenset([alg(i, x)])) for x in du.carrier(i).elements]
        if not d_covered(u, i, alg.sort(i), pairs):
            ok = False
            rs.add(failed("d.geometric.unit", "identity-below-embedding-after-algebra", {"sort": i}))
    if ok:
        rs.add(passed("d.geometric.unit", "identity-below-embedding-after-algebra"))

    ok = True
    for i in u.sorts:
        fwd = Rel.from_pairs(
            u.carrier(alg.sort(i)),
            u.carrier(i),
            ((alg(i, frozenset([a])), a) for a in u.carrier(i).elements),
        )
        bwd = Rel.from_pairs(
            u.carrier(i),
            u.carrier(alg.sort(i)),
            ((a, alg(i, frozenset([a]))) for a in u.carrier(i).elements),
        )
        if not (
            in_downclosure(fwd, u, alg.sort(i), i)
            and in_downclosure(bwd, u, i, alg.sort(i))
        ):
            ok = False
            rs.add(failed("d.geometric.counit", "algebra-splits-embedding", {"sort": i}))
    if ok:
        rs.add(passed("d.geometric.counit", "algebra-splits-embedding"))

    ok = True
    for (i, j), srt in sorted(m.star.items(), key=repr):
        fwd_pairs = []
        bwd_pairs = []
        for x in du.carrier(i).elements:
            for y in du.carrier(j).elements:
                meet_xy = frozenset(
                    m.meet(i, j, a, b) for a in x for b in y
                )
                lhs = alg(srt, meet_xy)
                rhs = m.meet(i, j, alg(i, x), alg(j, y))
                fwd_pairs.append((lhs, rhs))
                bwd_pairs.append((rhs, lhs))
        fwd = Rel.from_pairs(u.carrier(alg.sort(srt)), u.carrier(srt), fwd_pairs)
        bwd = Rel.from_pairs(u.carrier(srt), u.carrier(alg.sort(srt)), bwd_pairs)
        if not (
            in_downclosure(fwd, u, alg.sort(srt), srt)
            and in_downclosure(bwd, u, srt, alg.sort(srt))
        ):
            ok = False
            rs.add(failed("d.geometric.meets", "algebra-preserves-meets", {"sorts": [i, j]}))
    if ok:
        rs.add(passed("d.geometric.meets", "algebra-preserves-meets"))
    return rs
