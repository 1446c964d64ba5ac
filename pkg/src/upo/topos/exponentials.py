"""Tracking relations, prime normalization, and exponentials.

A morphism out of an object whose existence predicate is existentially
prime is captured by a total relation on carriers; the exponential carrier
is the set of total relations between two carriers, with function-space
equality defined through the fiber's implication and universal quantifier.
Transposes come from tracking relations; the existence part of an
exponential may fail to be prime, so normalization is re-run lazily before
any tracking and the change is reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

import upo.dlogic as dl
from ..dlogic.fiber import DFiber, LogicFiber, fiber_equiv
from ..relcore import FinFun, FinSet, Rel, RelError, fs, product_finset, tuple_finset
from ..reports import ReportSet, failed, passed
from .per import (
    PerMorphism,
    PerObject,
    _remap,
    compose,
    existence,
    identity,
    is_morphism,
    morphism_equal,
    product,
    product_morphism,
)


@dataclass(frozen=True)
class TrackingRelation:
    rel: Rel  # total relation between the carriers


def is_tracking_for(fiber: LogicFiber, f: PerMorphism, t: Rel) -> bool:
    """rho(i), (delta t)(i, j) |- phi(i, j)."""
    if not t.is_total():
        return False
    sp = f.space
    tset = frozenset(t.pairs())
    lhs = fiber.meet(
        _remap(fiber, f.src.rho, sp, lambda p: (p[0], p[0])),
        fiber.delta(sp, frozenset(p for p in sp.elements if p in tset)),
    )
    return fiber.entails(lhs, f.phi)


def from_tracking(
    fiber: LogicFiber, src: PerObject, dst: PerObject, t: Rel
) -> PerMorphism:
    """The morphism a tracking relation determines:
    phi(i, j) = rho(i) and exists j'. t(i, j') and sigma(j, j')."""
    if not t.is_total():
        raise RelError("tracking relations must be total")
    cube = tuple_finset([src.carrier, dst.carrier, dst.carrier])
    tset = frozenset(t.pairs())
    mid = fiber.meet(
        fiber.delta(cube, frozenset(q for q in cube.elements if (q[0], q[2]) in tset)),
        _remap(fiber, dst.rho, cube, lambda q: (q[1], q[2])),
    )
    sp = product_finset(src.carrier, dst.carrier)
    ex = fiber.exists_along(mid, FinFun.from_map(cube, sp, lambda q: (q[0], q[1])))
    phi = fiber.meet(_remap(fiber, src.rho, sp, lambda p: (p[0], p[0])), ex)
    return PerMorphism(src, dst, phi)


def tracking(
    fiber: DFiber, f: PerMorphism
) -> tuple[TrackingRelation | None, str]:
    """Find a tracking function for a morphism whose source existence part
    is existentially prime; None with the reason otherwise."""
    e = existence(fiber, f.src)
    res = dl.is_prime(fiber.du, e)
    if res.verdict is not True:
        return None, "source existence predicate is not existentially prime"
    A, B = f.src.carrier, f.dst.carrier
    for table in itertools.product(range(len(B)), repeat=len(A)):
        t = Rel(A, B, tuple(1 << ix for ix in table))
        if is_tracking_for(fiber, f, t):
            return TrackingRelation(t), ""
    return None, "no tracking function matches the morphism"


def prime_normalize(
    fiber: DFiber, obj: PerObject
) -> tuple[PerObject, PerMorphism, PerMorphism, bool]:
    """Replace an object by an isomorphic one whose existence predicate is
    prime: the carrier becomes the support pairs (index, member).

    Returns (object, iso to the original, iso from the original, changed)."""
    e = existence(fiber, obj)
    if dl.is_prime(fiber.du, e).verdict is True:
        ident = identity(fiber, obj)
        return obj, ident, ident, False
    sp = dl.powerset_to_span(fiber.du, e)
    J = sp.leg.src
    pi_pred = dl.y_image(fiber.du, sp.pred)
    sq = product_finset(J, J)
    sigma = fiber.meet(
        fiber.meet(
            _remap(fiber, pi_pred, sq, lambda p: p[0]),
            _remap(fiber, pi_pred, sq, lambda p: p[1]),
        ),
        _remap(fiber, obj.rho, sq, lambda p: (sp.leg(p[0]), sp.leg(p[1]))),
    )
    norm = PerObject(J, sigma)
    to_sp = product_finset(J, obj.carrier)
    to_phi = fiber.meet(
        _remap(fiber, sigma, to_sp, lambda p: (p[0], p[0])),
        _remap(fiber, obj.rho, to_sp, lambda p: (sp.leg(p[0]), p[1])),
    )
    to_iso = PerMorphism(norm, obj, to_phi)
    from_sp = product_finset(obj.carrier, J)
    from_phi = fiber.meet(
        _remap(fiber, obj.rho, from_sp, lambda p: (p[0], p[0])),
        fiber.meet(
            _remap(fiber, sigma, from_sp, lambda p: (p[1], p[1])),
            _remap(fiber, obj.rho, from_sp, lambda p: (p[0], sp.leg(p[1]))),
        ),
    )
    from_iso = PerMorphism(obj, norm, from_phi)
    return norm, to_iso, from_iso, True


def total_relations_finset(J: FinSet, K: FinSet) -> FinSet:
    """All total relations J -> K ordered by (size, index-lexicographic)."""
    row_sets = [
        frozenset(c)
        for size in range(1, len(K) + 1)
        for c in itertools.combinations(K.elements, size)
    ]
    elems = [
        frozenset((j, k) for j, row in zip(J.elements, combo) for k in row)
        for combo in itertools.product(row_sets, repeat=len(J))
    ]
    elems.sort(key=lambda t: (len(t), tuple(sorted((J.index(j), K.index(k)) for j, k in t))))
    return FinSet(f"tRel({J.name},{K.name})", tuple(elems))


SIZE_GUARD = 3


def exponential(
    fiber: DFiber, a: PerObject, b: PerObject, guard: int = SIZE_GUARD
) -> tuple[PerObject, PerMorphism, bool]:
    """The function-space object with its evaluation morphism.

    Also returns whether the exponent had to be normalized to a prime
    existence part."""
    if fiber.implies_op is None or fiber.forall_op is None:
        raise RelError("exponentials need implication and universal quantification")
    if len(a.carrier) > guard or len(b.carrier) > guard:
        raise RelError(f"exponential carriers exceed the size guard {guard}")
    a, _, _, changed = prime_normalize(fiber, a)
    J, K = a.carrier, b.carrier
    T = total_relations_finset(J, K)
    sq = product_finset(T, T)
    pt = fs("pt", ["*"])
    values = []
    out_sort = None
    for t, u in sq.elements:
        pairs = tuple(
            (j, k, j2, k2)
            for (j, k) in sorted(t, key=repr)
            for (j2, k2) in sorted(u, key=repr)
        )
        E = FinSet("E", pairs)
        sig = _remap(fiber, a.rho, E, lambda q: (q[0], q[2]))
        tau = _remap(fiber, b.rho, E, lambda q: (q[1], q[3]))
        impl = fiber.implies(sig, tau)
        val = fiber.forall_along(impl, FinFun.constant(E, pt, "*"))
        out_sort = val.sort
        values.append(val.value("*"))
    rho = dl.dpredicate(fiber.du, sq, out_sort if out_sort is not None else fiber.meets.unit, values)
    exp = PerObject(T, rho)

    prod, _, _ = product(fiber, exp, a)
    ev_rel = Rel.from_pairs(
        prod.carrier,
        K,
        (((t, j), k) for (t, j) in prod.carrier.elements for k in K.elements if (j, k) in t),
    )
    ev = from_tracking(fiber, prod, b, ev_rel)
    return exp, ev, changed


def transpose_of(
    fiber: DFiber,
    X: PerObject,
    a: PerObject,
    b: PerObject,
    exp: PerObject,
    f: PerMorphism,
) -> PerMorphism:
    """Exponential transpose of f : X x a -> b (product built by `product`,
    a already prime-normalized)."""
    t, reason = tracking(fiber, f)
    if t is None:
        raise RelError(f"cannot transpose: {reason}")
    J, K = a.carrier, b.carrier
    table = []
    for x in X.carrier.elements:
        graph = frozenset(
            (j, k)
            for j in J.elements
            for k in K.elements
            if t.rel.holds((x, j), k)
        )
        table.append(exp.carrier.index(graph))
    s_tilde = Rel(X.carrier, exp.carrier, tuple(1 << ix for ix in table))
    return from_tracking(fiber, X, exp, s_tilde)


def tracked_morphisms(
    fiber: LogicFiber, src: PerObject, dst: PerObject
) -> Iterator[tuple[Rel, PerMorphism]]:
    """All morphisms tracked by a function between the carriers."""
    A, B = src.carrier, dst.carrier
    for table in itertools.product(range(len(B)), repeat=len(A)):
        t = Rel(A, B, tuple(1 << ix for ix in table))
        cand = from_tracking(fiber, src, dst, t)
        if is_morphism(fiber, cand):
            yield t, cand


def exponential_audit(
    fiber: DFiber,
    a: PerObject,
    b: PerObject,
    mediator_sources: list[PerObject],
    deep_limit: int = 16,
) -> ReportSet:
    """Round trip and uniqueness of transposes.

    Mediator candidates are all functions from the test object into the
    exponential carrier.  Small candidate spaces get the full morphism-level
    comparison; above ``deep_limit`` candidates, a candidate is compared by
    the tracking judgment against the constructed transpose, which
    reconstructs the same morphism."""
    rs = ReportSet()
    exp, ev, _ = exponential(fiber, a, b)
    a_norm, _, _, _ = prime_normalize(fiber, a)

    ok_rt = True
    ok_unique = True
    for X in mediator_sources:
        prod_xa, _, _ = product(fiber, X, a_norm)
        prod_ea, _, _ = product(fiber, exp, a_norm)
        id_a = identity(fiber, a_norm)
        n_candidates = len(exp.carrier) ** len(X.carrier)
        for f in _sample_morphisms(fiber, prod_xa, b):
            tr = transpose_of(fiber, X, a_norm, b, exp, f)
            back = compose(
                fiber,
                product_morphism(fiber, prod_xa, prod_ea, tr, id_a),
                ev,
            )
            if not morphism_equal(fiber, back, f):
                ok_rt = False
                rs.add(failed("topos.exp.round-trip", "evaluation-after-transpose", {}))
                continue
            matches = 0
            mismatched = 0
            for table in itertools.product(
                range(len(exp.carrier)), repeat=len(X.carrier)
            ):
                h_rel = Rel(X.carrier, exp.carrier, tuple(1 << ix for ix in table))
                comp_rel = Rel.from_pairs(
                    prod_xa.carrier,
                    b.carrier,
                    (
                        ((x, j), k)
                        for (x, j) in prod_xa.carrier.elements
                        for k in b.carrier.elements
                        if (j, k) in exp.carrier.elements[table[X.carrier.index(x)]]
                    ),
                )
                if not is_tracking_for(fiber, f, comp_rel):
                    continue  # this candidate's composite with ev is not f
                h = None
                if n_candidates <= deep_limit:
                    h = from_tracking(fiber, X, exp, h_rel)
                    if not is_morphism(fiber, h):
                        continue
                    back_h = compose(
                        fiber,
                        product_morphism(fiber, prod_xa, prod_ea, h, id_a),
                        ev,
                    )
                    if not morphism_equal(fiber, back_h, f):
                        continue
                    matches += 1
                    if not morphism_equal(fiber, h, tr):
                        mismatched += 1
                else:
                    matches += 1
                    if not is_tracking_for(fiber, tr, h_rel):
                        mismatched += 1
            if matches == 0 or mismatched:
                ok_unique = False
                rs.add(
                    failed(
                        "topos.exp.unique",
                        "transpose-uniqueness",
                        {"matches": matches, "mismatched": mismatched},
                    )
                )
    if ok_rt:
        rs.add(passed("topos.exp.round-trip", "evaluation-after-transpose"))
    if ok_unique:
        rs.add(passed("topos.exp.unique", "transpose-uniqueness"))
    return rs


def _sample_morphisms(fiber: DFiber, src: PerObject, dst: PerObject):
    """A deterministic family of morphisms src -> dst: everything tracked
    by a function between the carriers, up to equality."""
    out = []
    for _, cand in tracked_morphisms(fiber, src, dst):
        if not any(morphism_equal(fiber, cand, o) for o in out):
            out.append(cand)
    return out
