"""Constant objects, global sections, assemblies, the support reflection,
closure, separated objects, and the double-negation comparison."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from ..dlogic.fiber import FiberCapabilityError, LogicFiber, fiber_equiv
from ..relcore import Element, FinFun, FinSet, RelError, fs, product_finset, tuple_finset
from ..reports import ReportSet, failed, passed
from .per import (
    PerMorphism,
    PerObject,
    _remap,
    compose,
    existence,
    hom_classes,
    is_cover,
    is_iso,
    is_morphism,
    morphism_equal,
    product,
    quotient,
    strict_check,
    terminal,
    validate_morphism,
)


def delta_object(fiber: LogicFiber, M: FinSet) -> PerObject:
    """The constant object (M, =)."""
    sq = product_finset(M, M)
    diag = frozenset((m, m) for m in M.elements)
    return PerObject(M, fiber.delta(sq, diag))


def delta_of_map(fiber: LogicFiber, h: FinFun) -> PerMorphism:
    """The constant morphism of a function between index sets."""
    src, dst = delta_object(fiber, h.src), delta_object(fiber, h.dst)
    sp = product_finset(h.src, h.dst)
    gr = frozenset((m, h(m)) for m in h.src.elements)
    return PerMorphism(src, dst, fiber.delta(sp, gr))


def assembly(fiber: LogicFiber, M: FinSet, phi: Any) -> PerObject:
    """(M, =_phi): equality restricted by a predicate on M."""
    sq = product_finset(M, M)
    diag = frozenset((m, m) for m in M.elements)
    rho = fiber.meet(fiber.delta(sq, diag), _remap(fiber, phi, sq, lambda p: p[0]))
    return PerObject(M, rho)


def global_sections(fiber: LogicFiber, obj: PerObject) -> list[PerMorphism]:
    """Morphisms from the terminal object, up to logical equivalence."""
    return hom_classes(fiber, terminal(fiber), obj)


def global_element(fiber: LogicFiber, M: FinSet, m: Element) -> PerMorphism:
    """The singleton global element of a constant object."""
    t = terminal(fiber)
    dm = delta_object(fiber, M)
    sp = product_finset(t.carrier, M)
    return PerMorphism(t, dm, fiber.delta(sp, frozenset({("*", m)})))


def gamma_pullback_audit(fiber: LogicFiber, M: FinSet) -> ReportSet:
    """The pointwise-truth subset of a predicate agrees with pulling the
    global sections of its assembly back along the unit."""
    rs = ReportSet()
    ok = True
    t = terminal(fiber)
    for phi in fiber.predicates_on(M):
        lhs = fiber.gamma(phi)
        asm = assembly(fiber, M, phi)
        incl = PerMorphism(asm, delta_object(fiber, M), asm.rho)
        rhs = set()
        for m in M.elements:
            g = global_element(fiber, M, m)
            # factoring through the inclusion: the restricted element must
            # be a morphism into the assembly whose composite is g
            cand = PerMorphism(t, asm, g.phi)
            if is_morphism(fiber, cand) and morphism_equal(
                fiber, compose(fiber, cand, incl), g
            ):
                rhs.add(m)
        if lhs != frozenset(rhs):
            ok = False
            rs.add(
                failed(
                    "topos.gamma-square",
                    "global-sections-compute-gamma",
                    {"index": len(M), "lhs": sorted(lhs, key=repr), "rhs": sorted(rhs, key=repr)},
                )
            )
            break
    if ok:
        rs.add(passed("topos.gamma-square", "global-sections-compute-gamma"))
    return rs


# --- support reflection ------------------------------------------------------


def pi_object(fiber: LogicFiber, obj: PerObject) -> FinSet:
    """Apply the support map to the relation and quotient: the underlying
    set of the reflection into the base."""
    pairs = fiber.pi(obj.rho)  # subset of carrier x carrier
    support = sorted({p[0] for p in pairs} | {p[1] for p in pairs}, key=obj.carrier.index)
    parent = {c: c for c in support}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for a, b in sorted(pairs, key=repr):
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = sorted((ra, rb), key=obj.carrier.index)
            parent[hi] = lo
    classes = sorted({find(c) for c in support}, key=obj.carrier.index)
    return FinSet(f"Pi({obj.carrier.name})", tuple(classes))


def counit_audit(fiber: LogicFiber, M: FinSet) -> ReportSet:
    """Reflection after the constant-objects functor is the identity."""
    rs = ReportSet()
    dm = delta_object(fiber, M)
    piset = pi_object(fiber, dm)
    if set(piset.elements) == set(M.elements):
        rs.add(passed("topos.pi-counit", "reflection-splits-constants"))
    else:
        rs.add(
            failed(
                "topos.pi-counit",
                "reflection-splits-constants",
                {"expected": list(M.elements), "got": list(piset.elements)},
            )
        )
    return rs


# --- closure and separated objects ------------------------------------------


def closure_j(fiber: LogicFiber, obj: PerObject, v: Any) -> Any:
    """The universal closure of a strict predicate: constant-on-support of
    it, meet the existence predicate."""
    if not strict_check(fiber, obj, v):
        raise RelError("closure needs a strict predicate")
    car = obj.carrier
    dv = fiber.delta(car, fiber.pi(v))
    return fiber.meet(dv, existence(fiber, obj))


def diagonal_closure(fiber: LogicFiber, obj: PerObject) -> Any:
    """j applied to the diagonal of obj x obj, as a binary predicate."""
    sq = obj.square
    dpi = fiber.delta(sq, fiber.pi(obj.rho))
    e2 = fiber.meet(
        _remap(fiber, obj.rho, sq, lambda p: (p[0], p[0])),
        _remap(fiber, obj.rho, sq, lambda p: (p[1], p[1])),
    )
    return fiber.meet(dpi, e2)


def is_separated(fiber: LogicFiber, obj: PerObject) -> bool:
    """Separated iff the closed diagonal collapses back to the relation."""
    return fiber.entails(diagonal_closure(fiber, obj), obj.rho)


def separated_reflection(fiber: LogicFiber, obj: PerObject) -> PerMorphism:
    """Quotient by the closure of the diagonal."""
    return quotient(fiber, obj, diagonal_closure(fiber, obj))


def notnot_audit(fiber: LogicFiber, max_index: int = 3) -> ReportSet:
    """Double negation agrees with the closure triad: on fiber predicates,
    constant-on-support equals not-not; on subobject representatives, the
    universal closure equals not-not relative to the object."""
    rs = ReportSet()
    try:
        fiber.bottom(fs("probe", [0]))
    except (FiberCapabilityError, AttributeError):
        rs.add(failed("topos.notnot", "double-negation-closure", {"missing": "bottom"}))
        return rs

    ok = True
    for size in range(max_index + 1):
        M = fs("M", list(range(size)))
        bot = fiber.bottom(M)
        for phi in fiber.predicates_on(M):
            notnot = fiber.implies(fiber.implies(phi, bot), bot)
            closed = fiber.delta(M, fiber.pi(phi))
            if not fiber_equiv(fiber, notnot, closed):
                ok = False
                rs.add(
                    failed(
                        "topos.notnot.fiber",
                        "support-closure-is-double-negation",
                        {"index": size},
                    )
                )
                break
        if not ok:
            break
    if ok:
        rs.add(passed("topos.notnot.fiber", "support-closure-is-double-negation"))

    # subobject version on an assembly-rich object
    M = fs("M", list(range(min(max_index, 2) + 1)))
    ok = True
    for phi in fiber.predicates_on(M):
        obj = assembly(fiber, M, phi)
        e = existence(fiber, obj)
        bot = fiber.bottom(M)
        for v in fiber.predicates_on(M):
            vs = fiber.meet(v, e)
            if not strict_check(fiber, obj, vs):
                continue
            j_of = closure_j(fiber, obj, vs)
            notnot = fiber.meet(
                fiber.implies(fiber.implies(vs, bot), bot), e
            )
            if not fiber_equiv(fiber, j_of, notnot):
                ok = False
                rs.add(failed("topos.notnot.sub", "closure-is-double-negation", {}))
                break
        if not ok:
            break
    if ok:
        rs.add(passed("topos.notnot.sub", "closure-is-double-negation"))
    return rs
