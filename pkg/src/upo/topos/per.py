"""Partial equivalence relations and functional relations over a logic
fiber: the category every exactness audit runs in.

Objects are carriers with a symmetric-transitive predicate on the square;
morphisms are predicates on the product that are strict, congruent,
single-valued, and total, identified up to logical equivalence.  All
builders construct the defining formulas; universal properties are verified
by the audit functions, never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

from ..relcore import Element, FinFun, FinSet, RelError, fs, product_finset, tuple_finset
from ..reports import ReportSet, failed, passed
from ..dlogic.fiber import LogicFiber, fiber_equiv


@dataclass(frozen=True)
class PerObject:
    carrier: FinSet
    rho: Any  # fiber predicate over carrier x carrier

    @property
    def square(self) -> FinSet:
        return product_finset(self.carrier, self.carrier)


@dataclass(frozen=True)
class PerMorphism:
    src: PerObject
    dst: PerObject
    phi: Any  # fiber predicate over src.carrier x dst.carrier

    @property
    def space(self) -> FinSet:
        return product_finset(self.src.carrier, self.dst.carrier)


def _remap(fiber: LogicFiber, pred: Any, space: FinSet, pick) -> Any:
    """Reindex a fiber predicate along a coordinate picker."""
    target = fiber.index_set(pred)
    return fiber.reindex(pred, FinFun.from_map(space, target, pick))


def existence(fiber: LogicFiber, obj: PerObject) -> Any:
    """The definedness predicate rho(c, c) on the carrier."""
    return _remap(fiber, obj.rho, obj.carrier, lambda c: (c, c))


def validate_object(fiber: LogicFiber, obj: PerObject) -> ReportSet:
    rs = ReportSet()
    sq = obj.square
    swapped = _remap(fiber, obj.rho, sq, lambda p: (p[1], p[0]))
    if fiber.entails(obj.rho, swapped):
        rs.add(passed("per.object.symm", "relation-symmetric"))
    else:
        rs.add(failed("per.object.symm", "relation-symmetric", {"carrier": obj.carrier.name}))
    cube = tuple_finset([obj.carrier] * 3)
    r12 = _remap(fiber, obj.rho, cube, lambda t: (t[0], t[1]))
    r23 = _remap(fiber, obj.rho, cube, lambda t: (t[1], t[2]))
    r13 = _remap(fiber, obj.rho, cube, lambda t: (t[0], t[2]))
    if fiber.entails(fiber.meet(r12, r23), r13):
        rs.add(passed("per.object.trans", "relation-transitive"))
    else:
        rs.add(failed("per.object.trans", "relation-transitive", {"carrier": obj.carrier.name}))
    return rs


def validate_morphism(fiber: LogicFiber, f: PerMorphism) -> ReportSet:
    rs = ReportSet()
    A, B = f.src, f.dst
    sp = f.space

    strict_rhs = fiber.meet(
        _remap(fiber, A.rho, sp, lambda p: (p[0], p[0])),
        _remap(fiber, B.rho, sp, lambda p: (p[1], p[1])),
    )
    rs.add(
        passed("per.morphism.strict", "strictness")
        if fiber.entails(f.phi, strict_rhs)
        else failed("per.morphism.strict", "strictness", {})
    )

    quad = tuple_finset([A.carrier, A.carrier, B.carrier, B.carrier])
    lhs = fiber.meet(
        _remap(fiber, f.phi, quad, lambda t: (t[0], t[2])),
        fiber.meet(
            _remap(fiber, A.rho, quad, lambda t: (t[0], t[1])),
            _remap(fiber, B.rho, quad, lambda t: (t[2], t[3])),
        ),
    )
    rhs = _remap(fiber, f.phi, quad, lambda t: (t[1], t[3]))
    rs.add(
        passed("per.morphism.cong", "congruence")
        if fiber.entails(lhs, rhs)
        else failed("per.morphism.cong", "congruence", {})
    )

    tri = tuple_finset([A.carrier, B.carrier, B.carrier])
    lhs = fiber.meet(
        _remap(fiber, f.phi, tri, lambda t: (t[0], t[1])),
        _remap(fiber, f.phi, tri, lambda t: (t[0], t[2])),
    )
    rhs = _remap(fiber, B.rho, tri, lambda t: (t[1], t[2]))
    rs.add(
        passed("per.morphism.singval", "single-valuedness")
        if fiber.entails(lhs, rhs)
        else failed("per.morphism.singval", "single-valuedness", {})
    )

    e = existence(fiber, A)
    image = fiber.exists_along(f.phi, FinFun.from_map(sp, A.carrier, lambda p: p[0]))
    rs.add(
        passed("per.morphism.tot", "totality")
        if fiber.entails(e, image)
        else failed("per.morphism.tot", "totality", {})
    )
    return rs


def is_morphism(fiber: LogicFiber, f: PerMorphism) -> bool:
    return validate_morphism(fiber, f).all_pass


def morphism_equal(fiber: LogicFiber, f: PerMorphism, g: PerMorphism) -> bool:
    if f.src.carrier != g.src.carrier or f.dst.carrier != g.dst.carrier:
        return False
    return fiber_equiv(fiber, f.phi, g.phi)


def identity(fiber: LogicFiber, obj: PerObject) -> PerMorphism:
    return PerMorphism(obj, obj, obj.rho)


def compose(fiber: LogicFiber, f: PerMorphism, g: PerMorphism) -> PerMorphism:
    """Relational composite (diagrammatic order: f then g)."""
    if f.dst.carrier != g.src.carrier:
        raise RelError("composition carrier mismatch")
    A, B, C = f.src, f.dst, g.dst
    cube = tuple_finset([A.carrier, B.carrier, C.carrier])
    mid = fiber.meet(
        _remap(fiber, f.phi, cube, lambda t: (t[0], t[1])),
        _remap(fiber, g.phi, cube, lambda t: (t[1], t[2])),
    )
    out_space = product_finset(A.carrier, C.carrier)
    phi = fiber.exists_along(mid, FinFun.from_map(cube, out_space, lambda t: (t[0], t[2])))
    return PerMorphism(A, C, phi)


def is_cover(fiber: LogicFiber, f: PerMorphism) -> bool:
    """Target coverage: sigma(d) |- exists c. phi(c, d)."""
    A, B = f.src, f.dst
    e = existence(fiber, B)
    image = fiber.exists_along(
        f.phi, FinFun.from_map(f.space, B.carrier, lambda p: p[1])
    )
    return fiber.entails(e, image)


def is_mono(fiber: LogicFiber, f: PerMorphism) -> bool:
    """Kernel collapses to the diagonal:
    phi(c, d), phi(c', d) |- rho(c, c')."""
    A, B = f.src, f.dst
    tri = tuple_finset([A.carrier, A.carrier, B.carrier])
    lhs = fiber.meet(
        _remap(fiber, f.phi, tri, lambda t: (t[0], t[2])),
        _remap(fiber, f.phi, tri, lambda t: (t[1], t[2])),
    )
    rhs = _remap(fiber, A.rho, tri, lambda t: (t[0], t[1]))
    return fiber.entails(lhs, rhs)


def is_iso(fiber: LogicFiber, f: PerMorphism) -> bool:
    return is_cover(fiber, f) and is_mono(fiber, f)


# --- finite limits -----------------------------------------------------------


def terminal(fiber: LogicFiber) -> PerObject:
    pt = fs("1", ["*"])
    return PerObject(pt, fiber.top(product_finset(pt, pt)))


def to_terminal(fiber: LogicFiber, obj: PerObject) -> PerMorphism:
    t = terminal(fiber)
    sp = product_finset(obj.carrier, t.carrier)
    phi = _remap(fiber, obj.rho, sp, lambda p: (p[0], p[0]))
    return PerMorphism(obj, t, phi)


def product(fiber: LogicFiber, a: PerObject, b: PerObject) -> tuple[PerObject, PerMorphism, PerMorphism]:
    """The product object with its two projections."""
    car = product_finset(a.carrier, b.carrier)
    sq = product_finset(car, car)
    rho = fiber.meet(
        _remap(fiber, a.rho, sq, lambda p: (p[0][0], p[1][0])),
        _remap(fiber, b.rho, sq, lambda p: (p[0][1], p[1][1])),
    )
    prod = PerObject(car, rho)
    sp1 = product_finset(car, a.carrier)
    pi1 = PerMorphism(
        prod,
        a,
        fiber.meet(
            _remap(fiber, rho, sp1, lambda p: (p[0], p[0])),
            _remap(fiber, a.rho, sp1, lambda p: (p[0][0], p[1])),
        ),
    )
    sp2 = product_finset(car, b.carrier)
    pi2 = PerMorphism(
        prod,
        b,
        fiber.meet(
            _remap(fiber, rho, sp2, lambda p: (p[0], p[0])),
            _remap(fiber, b.rho, sp2, lambda p: (p[0][1], p[1])),
        ),
    )
    return prod, pi1, pi2


def pair_into_product(
    fiber: LogicFiber, prod: PerObject, f: PerMorphism, g: PerMorphism
) -> PerMorphism:
    """The canonical mediator <f, g> into a product built by `product`."""
    X = f.src
    sp = product_finset(X.carrier, prod.carrier)
    phi = fiber.meet(
        _remap(fiber, f.phi, sp, lambda p: (p[0], p[1][0])),
        _remap(fiber, g.phi, sp, lambda p: (p[0], p[1][1])),
    )
    return PerMorphism(X, prod, phi)


def product_morphism(
    fiber: LogicFiber,
    prod_src: PerObject,
    prod_dst: PerObject,
    f: PerMorphism,
    g: PerMorphism,
) -> PerMorphism:
    """f x g between products built by `product`."""
    sp = product_finset(prod_src.carrier, prod_dst.carrier)
    phi = fiber.meet(
        _remap(fiber, f.phi, sp, lambda p: (p[0][0], p[1][0])),
        _remap(fiber, g.phi, sp, lambda p: (p[0][1], p[1][1])),
    )
    return PerMorphism(prod_src, prod_dst, phi)


def strict_check(fiber: LogicFiber, obj: PerObject, v: Any) -> bool:
    """v(x) |- rho(x, x) and v(x), rho(x, y) |- v(y)."""
    car = obj.carrier
    e = existence(fiber, obj)
    if not fiber.entails(v, e):
        return False
    sq = obj.square
    lhs = fiber.meet(_remap(fiber, v, sq, lambda p: p[0]), obj.rho)
    rhs = _remap(fiber, v, sq, lambda p: p[1])
    return fiber.entails(lhs, rhs)


def strictify(fiber: LogicFiber, obj: PerObject, v: Any) -> Any:
    """Close an arbitrary predicate on the carrier to a strict one:
    (x | rho(x) and exists y. v(y) and rho(y, x))."""
    sq = obj.square
    mid = fiber.meet(_remap(fiber, v, sq, lambda p: p[0]), obj.rho)
    return fiber.exists_along(mid, FinFun.from_map(sq, obj.carrier, lambda p: p[1]))


def subobject_from_strict(
    fiber: LogicFiber, obj: PerObject, v: Any
) -> tuple[PerObject, PerMorphism]:
    """The subobject carried by a strict predicate, with its inclusion."""
    if not strict_check(fiber, obj, v):
        raise RelError("predicate is not strict for this object")
    sq = obj.square
    rho_v = fiber.meet(obj.rho, _remap(fiber, v, sq, lambda p: p[0]))
    sub = PerObject(obj.carrier, rho_v)
    return sub, PerMorphism(sub, obj, rho_v)


def equalizer(
    fiber: LogicFiber, f: PerMorphism, g: PerMorphism
) -> tuple[PerObject, PerMorphism]:
    """Equalizer of a parallel pair as a subobject of the source."""
    if f.src.carrier != g.src.carrier or f.dst.carrier != g.dst.carrier:
        raise RelError("equalizer needs a parallel pair")
    A, B = f.src, f.dst
    sp = f.space
    both = fiber.meet(f.phi, g.phi)
    v = fiber.exists_along(both, FinFun.from_map(sp, A.carrier, lambda p: p[0]))
    return subobject_from_strict(fiber, A, v)


def factorize(
    fiber: LogicFiber, f: PerMorphism
) -> tuple[PerMorphism, PerMorphism, PerMorphism]:
    """Cover / iso / mono decomposition of a morphism."""
    A, B = f.src, f.dst
    sq = A.square
    cube = tuple_finset([A.carrier, A.carrier, B.carrier])
    both = fiber.meet(
        _remap(fiber, f.phi, cube, lambda t: (t[0], t[2])),
        _remap(fiber, f.phi, cube, lambda t: (t[1], t[2])),
    )
    kernel = fiber.exists_along(both, FinFun.from_map(cube, sq, lambda t: (t[0], t[1])))
    pi = fiber.meet(
        fiber.meet(
            _remap(fiber, A.rho, sq, lambda p: (p[0], p[0])),
            _remap(fiber, A.rho, sq, lambda p: (p[1], p[1])),
        ),
        kernel,
    )
    mid = PerObject(A.carrier, pi)

    v = fiber.exists_along(
        f.phi, FinFun.from_map(f.space, B.carrier, lambda p: p[1])
    )
    image, mono = subobject_from_strict(fiber, B, v)

    cover = PerMorphism(A, mid, pi)
    iso = PerMorphism(mid, image, f.phi)
    return cover, iso, mono


def kernel_pair_predicate(fiber: LogicFiber, f: PerMorphism) -> Any:
    """(c, c' | rho(c), rho(c'), exists d. phi(c,d) and phi(c',d))."""
    cover, _, _ = factorize(fiber, f)
    return cover.dst.rho


def quotient(fiber: LogicFiber, obj: PerObject, tau: Any) -> PerMorphism:
    """The cover onto the quotient by a coarser partial equivalence
    relation.  tau must refine outward: rho |- tau and tau's existence
    |- rho's existence."""
    target = PerObject(obj.carrier, tau)
    if not validate_object(fiber, target).all_pass:
        raise RelError("quotient datum is not a partial equivalence relation")
    if not fiber.entails(obj.rho, tau):
        raise RelError("quotient datum does not contain the object relation")
    if not fiber.entails(existence(fiber, target), existence(fiber, obj)):
        raise RelError("quotient datum enlarges the support")
    return PerMorphism(obj, target, tau)


def pullback(
    fiber: LogicFiber, f: PerMorphism, g: PerMorphism
) -> tuple[PerObject, PerMorphism, PerMorphism]:
    """Pullback of f : A -> C against g : B -> C with its two legs."""
    if f.dst.carrier != g.dst.carrier:
        raise RelError("pullback needs a cospan")
    A, B, C = f.src, g.src, f.dst
    prod, pi1, pi2 = product(fiber, A, B)
    cube = tuple_finset([A.carrier, B.carrier, C.carrier])
    both = fiber.meet(
        _remap(fiber, f.phi, cube, lambda t: (t[0], t[2])),
        _remap(fiber, g.phi, cube, lambda t: (t[1], t[2])),
    )
    w = fiber.exists_along(
        both, FinFun.from_map(cube, prod.carrier, lambda t: (t[0], t[1]))
    )
    w = strictify(fiber, prod, w)
    sub, incl = subobject_from_strict(fiber, prod, w)
    leg1 = compose(fiber, incl, pi1)
    leg2 = compose(fiber, incl, pi2)
    return sub, leg1, leg2


def diagonal_fill_in(
    fiber: LogicFiber,
    e: PerMorphism,
    m: PerMorphism,
    f: PerMorphism,
    g: PerMorphism,
) -> PerMorphism:
    """For a square m.f = g.e with e a cover and m a mono, the unique
    diagonal d with d.e = f and m.d = g."""
    B, C = e.dst, m.src
    cube = tuple_finset([B.carrier, e.src.carrier, C.carrier])
    mid = fiber.meet(
        _remap(fiber, e.phi, cube, lambda t: (t[1], t[0])),
        _remap(fiber, f.phi, cube, lambda t: (t[1], t[2])),
    )
    sp = product_finset(B.carrier, C.carrier)
    phi = fiber.exists_along(mid, FinFun.from_map(cube, sp, lambda t: (t[0], t[2])))
    return PerMorphism(B, C, phi)


def enumerate_morphisms(
    fiber: LogicFiber, src: PerObject, dst: PerObject
) -> Iterator[PerMorphism]:
    """Every morphism src -> dst, by brute force over fiber predicates."""
    sp = product_finset(src.carrier, dst.carrier)
    for phi in fiber.predicates_on(sp):
        cand = PerMorphism(src, dst, phi)
        if is_morphism(fiber, cand):
            yield cand


def hom_classes(
    fiber: LogicFiber, src: PerObject, dst: PerObject
) -> list[PerMorphism]:
    """Representatives of morphisms up to logical equivalence."""
    reps: list[PerMorphism] = []
    for cand in enumerate_morphisms(fiber, src, dst):
        if not any(morphism_equal(fiber, cand, r) for r in reps):
            reps.append(cand)
    return reps
