"""Composite audits over a logic fiber: category laws, limit universal
properties by mediator enumeration, image factorization and orthogonality,
exactness, constant objects, fiber reconstruction, and assemblies.

Test objects are built deterministically from the fiber itself, so a run
is reproducible byte for byte.
"""

from __future__ import annotations

import itertools

from ..dlogic.fiber import LogicFiber, fiber_equiv
from ..relcore import FinFun, FinSet, fs, product_finset
from ..reports import ReportSet, failed, passed
from .constructions import (
    assembly,
    counit_audit,
    delta_object,
    delta_of_map,
    gamma_pullback_audit,
    global_sections,
    is_separated,
    pi_object,
    separated_reflection,
)
from .per import (
    PerMorphism,
    PerObject,
    _remap,
    compose,
    diagonal_fill_in,
    enumerate_morphisms,
    equalizer,
    existence,
    factorize,
    hom_classes,
    identity,
    is_cover,
    is_iso,
    is_mono,
    is_morphism,
    kernel_pair_predicate,
    morphism_equal,
    pair_into_product,
    product,
    pullback,
    quotient,
    strict_check,
    strictify,
    subobject_from_strict,
    terminal,
    to_terminal,
    validate_morphism,
    validate_object,
)


def test_objects(fiber: LogicFiber, max_carrier: int = 2) -> list[PerObject]:
    """A deterministic zoo: the terminal, constant objects, an assembly,
    and a proper quotient."""
    out = [terminal(fiber)]
    M2 = fs("M2", ["u", "v"])
    out.append(delta_object(fiber, M2))
    preds = list(itertools.islice(fiber.predicates_on(M2), 4))
    for phi in preds[1:3]:
        out.append(assembly(fiber, M2, phi))
    d2 = delta_object(fiber, M2)
    full = fiber.top(product_finset(M2, M2))
    try:
        q = quotient(fiber, d2, full)
        out.append(q.dst)
    except Exception:
        pass
    return out


def morphism_pool(fiber: LogicFiber, objs: list[PerObject], cap: int = 6) -> list[PerMorphism]:
    pool = []
    for a in objs:
        for b in objs:
            if len(a.carrier) * len(b.carrier) > 6:
                continue
            pool.extend(hom_classes(fiber, a, b)[:cap])
    return pool


def category_laws_audit(fiber: LogicFiber, objs: list[PerObject] | None = None) -> ReportSet:
    rs = ReportSet()
    objs = objs or test_objects(fiber)
    ok = True
    for obj in objs:
        if not validate_object(fiber, obj).all_pass:
            ok = False
            rs.add(failed("topos.laws.objects", "object-validity", {"carrier": obj.carrier.name}))
    if ok:
        rs.add(passed("topos.laws.objects", "object-validity"))

    pool = morphism_pool(fiber, objs)
    ok = True
    for f in pool:
        lhs = compose(fiber, identity(fiber, f.src), f)
        rhs = compose(fiber, f, identity(fiber, f.dst))
        if not (morphism_equal(fiber, lhs, f) and morphism_equal(fiber, rhs, f)):
            ok = False
            rs.add(failed("topos.laws.identity", "identity-unit", {}))
            break
    if ok:
        rs.add(passed("topos.laws.identity", "identity-unit"))

    ok = True
    triples = 0
    for f in pool:
        for g in pool:
            if g.src.carrier != f.dst.carrier or not fiber_equiv(fiber, g.src.rho, f.dst.rho):
                continue
            for h in pool:
                if h.src.carrier != g.dst.carrier or not fiber_equiv(fiber, h.src.rho, g.dst.rho):
                    continue
                triples += 1
                lhs = compose(fiber, compose(fiber, f, g), h)
                rhs = compose(fiber, f, compose(fiber, g, h))
                if not morphism_equal(fiber, lhs, rhs):
                    ok = False
                    rs.add(failed("topos.laws.assoc", "composition-associative", {}))
    if ok:
        rs.add(passed("topos.laws.assoc", "composition-associative", f"{triples} triples"))
    return rs


def limits_audit(fiber: LogicFiber, mediator_carrier: int = 2) -> ReportSet:
    """Products, terminal, and equalizers with existence and uniqueness of
    mediators checked by brute-force enumeration of candidate predicates."""
    rs = ReportSet()
    M2 = fs("M2", ["u", "v"])
    preds = list(itertools.islice(fiber.predicates_on(M2), 3))
    a = delta_object(fiber, M2)
    b = assembly(fiber, M2, preds[1])
    xs = [terminal(fiber), assembly(fiber, M2, preds[2])]
    xs = [x for x in xs if len(x.carrier) <= mediator_carrier]

    prod, pi1, pi2 = product(fiber, a, b)
    ok_ex = ok_un = True
    for X in xs:
        for f in hom_classes(fiber, X, a):
            for g in hom_classes(fiber, X, b):
                med = pair_into_product(fiber, prod, f, g)
                if not (
                    is_morphism(fiber, med)
                    and morphism_equal(fiber, compose(fiber, med, pi1), f)
                    and morphism_equal(fiber, compose(fiber, med, pi2), g)
                ):
                    ok_ex = False
                    rs.add(failed("topos.limits.product", "product-mediator-exists", {}))
                others = [
                    cand
                    for cand in enumerate_morphisms(fiber, X, prod)
                    if morphism_equal(fiber, compose(fiber, cand, pi1), f)
                    and morphism_equal(fiber, compose(fiber, cand, pi2), g)
                ]
                if not all(morphism_equal(fiber, cand, med) for cand in others):
                    ok_un = False
                    rs.add(failed("topos.limits.product", "product-mediator-unique", {}))
    if ok_ex:
        rs.add(passed("topos.limits.product", "product-mediator-exists"))
    if ok_un:
        rs.add(passed("topos.limits.product", "product-mediator-unique"))

    t = terminal(fiber)
    ok = True
    for X in xs + [a]:
        bang = to_terminal(fiber, X)
        if not is_morphism(fiber, bang):
            ok = False
        for cand in hom_classes(fiber, X, t):
            if not morphism_equal(fiber, cand, bang):
                ok = False
                rs.add(failed("topos.limits.terminal", "terminal-unique", {}))
    if ok:
        rs.add(passed("topos.limits.terminal", "terminal-unique"))

    ok = True
    pairs = 0
    for f in hom_classes(fiber, a, b):
        for g in hom_classes(fiber, a, b):
            pairs += 1
            eq, incl = equalizer(fiber, f, g)
            if not morphism_equal(
                fiber, compose(fiber, incl, f), compose(fiber, incl, g)
            ):
                ok = False
                rs.add(failed("topos.limits.equalizer", "equalizer-equalizes", {}))
                continue
            for X in xs:
                for h in hom_classes(fiber, X, a):
                    if not morphism_equal(
                        fiber, compose(fiber, h, f), compose(fiber, h, g)
                    ):
                        continue
                    med = PerMorphism(X, eq, h.phi)
                    if not (
                        is_morphism(fiber, med)
                        and morphism_equal(fiber, compose(fiber, med, incl), h)
                    ):
                        ok = False
                        rs.add(failed("topos.limits.equalizer", "equalizer-mediator", {}))
    if ok:
        rs.add(passed("topos.limits.equalizer", "equalizer-laws", f"{pairs} parallel pairs"))

    # product with the terminal is isomorphic to the original
    prod1, p1, _ = product(fiber, a, t)
    ok = is_iso(fiber, p1)
    rs.add(
        passed("topos.limits.unit", "product-with-terminal-trivial")
        if ok
        else failed("topos.limits.unit", "product-with-terminal-trivial", {})
    )
    return rs


def factorization_audit(fiber: LogicFiber) -> ReportSet:
    rs = ReportSet()
    M2 = fs("M2", ["u", "v"])
    preds = list(itertools.islice(fiber.predicates_on(M2), 3))
    a = delta_object(fiber, M2)
    b = assembly(fiber, M2, preds[1])
    objs = [a, b]

    ok_split = ok_parts = True
    for src in objs:
        for dst in objs:
            for f in hom_classes(fiber, src, dst):
                cov, iso, mono = factorize(fiber, f)
                back = compose(fiber, compose(fiber, cov, iso), mono)
                if not morphism_equal(fiber, back, f):
                    ok_split = False
                    rs.add(failed("topos.factor.split", "factorization-recomposes", {}))
                if not (is_cover(fiber, cov) and is_mono(fiber, mono) and is_iso(fiber, iso)):
                    ok_parts = False
                    rs.add(failed("topos.factor.parts", "factor-parts-typed", {}))
                if is_mono(fiber, f) and not is_iso(fiber, cov):
                    ok_parts = False
                    rs.add(failed("topos.factor.parts", "mono-has-iso-cover-part", {}))
                if is_cover(fiber, f) and not is_iso(fiber, mono):
                    ok_parts = False
                    rs.add(failed("topos.factor.parts", "cover-has-iso-mono-part", {}))
    if ok_split:
        rs.add(passed("topos.factor.split", "factorization-recomposes"))
    if ok_parts:
        rs.add(passed("topos.factor.parts", "factor-parts-typed"))

    # orthogonality: every factorization yields a cover-vs-mono square
    # whose diagonal is the iso part, uniquely
    ok = True
    squares = 0
    for src in objs:
        for f0 in hom_classes(fiber, src, b):
            cov, iso, mono = factorize(fiber, f0)
            top = compose(fiber, cov, iso)  # src -> image
            bottom = compose(fiber, iso, mono)  # mid -> b
            if not morphism_equal(
                fiber, compose(fiber, top, mono), compose(fiber, cov, bottom)
            ):
                ok = False
                rs.add(failed("topos.factor.orthogonal", "square-commutes", {}))
                continue
            squares += 1
            d = diagonal_fill_in(fiber, cov, mono, top, bottom)
            if not (
                is_morphism(fiber, d)
                and morphism_equal(fiber, compose(fiber, cov, d), top)
                and morphism_equal(fiber, compose(fiber, d, mono), bottom)
            ):
                ok = False
                rs.add(failed("topos.factor.orthogonal", "diagonal-fill-in", {}))
            others = [
                cand
                for cand in enumerate_morphisms(fiber, cov.dst, mono.src)
                if morphism_equal(fiber, compose(fiber, cov, cand), top)
            ]
            if not all(morphism_equal(fiber, cand, d) for cand in others):
                ok = False
                rs.add(failed("topos.factor.orthogonal", "diagonal-unique", {}))
    if ok:
        rs.add(passed("topos.factor.orthogonal", "diagonal-fill-in", f"{squares} squares"))
    return rs


def exactness_audit(fiber: LogicFiber) -> ReportSet:
    rs = ReportSet()
    M2 = fs("M2", ["u", "v"])
    preds = list(itertools.islice(fiber.predicates_on(M2), 3))
    a = delta_object(fiber, M2)

    # kernel-pair / quotient round trip on every admissible datum
    ok = True
    count = 0
    sq = product_finset(M2, M2)
    for tau in fiber.predicates_on(sq):
        try:
            q = quotient(fiber, a, tau)
        except Exception:
            continue
        count += 1
        kernel = kernel_pair_predicate(fiber, q)
        if not fiber_equiv(fiber, kernel, tau):
            ok = False
            rs.add(failed("topos.exact.effective", "kernel-pair-recovers-quotient", {}))
    if ok:
        rs.add(
            passed(
                "topos.exact.effective",
                "kernel-pair-recovers-quotient",
                f"{count} quotient data",
            )
        )

    # covers are stable under pullback
    ok = True
    count = 0
    b = assembly(fiber, M2, preds[1])
    for f in hom_classes(fiber, b, a):
        for g in hom_classes(fiber, a, a):
            if not is_cover(fiber, g):
                continue
            count += 1
            _, leg1, _ = pullback(fiber, f, g)
            if not is_cover(fiber, leg1):
                ok = False
                rs.add(failed("topos.exact.stability", "covers-pullback-stable", {}))
    if ok:
        rs.add(passed("topos.exact.stability", "covers-pullback-stable", f"{count} pullbacks"))

    # composites of covers are covers
    ok = True
    for f in hom_classes(fiber, a, a):
        for g in hom_classes(fiber, a, a):
            if is_cover(fiber, f) and is_cover(fiber, g):
                if not is_cover(fiber, compose(fiber, f, g)):
                    ok = False
                    rs.add(failed("topos.exact.compose", "covers-compose", {}))
    if ok:
        rs.add(passed("topos.exact.compose", "covers-compose"))
    return rs


def subobject_audit(fiber: LogicFiber) -> ReportSet:
    """Monos correspond to strict predicates, up to isomorphism."""
    rs = ReportSet()
    M2 = fs("M2", ["u", "v"])
    a = delta_object(fiber, M2)
    ok = True
    for v in fiber.predicates_on(M2):
        if strict_check(fiber, a, v):
            sub, incl = subobject_from_strict(fiber, a, v)
            if not is_mono(fiber, incl):
                ok = False
                rs.add(failed("topos.sub.mono", "strict-predicate-gives-mono", {}))
        else:
            try:
                subobject_from_strict(fiber, a, v)
                ok = False
                rs.add(failed("topos.sub.mono", "non-strict-refused", {}))
            except Exception:
                pass
    # every mono into a arises from a strict predicate up to iso
    for src in (assembly(fiber, M2, next(iter(fiber.predicates_on(M2)))), a):
        for f in hom_classes(fiber, src, a):
            if not is_mono(fiber, f):
                continue
            sp = f.space
            v = fiber.exists_along(
                f.phi, FinFun.from_map(sp, M2, lambda p: p[1])
            )
            if not strict_check(fiber, a, v):
                ok = False
                rs.add(failed("topos.sub.image", "mono-image-strict", {}))
                continue
            sub, incl = subobject_from_strict(fiber, a, v)
            # f factors through the subobject by an isomorphism
            med = PerMorphism(src, sub, f.phi)
            if not (is_morphism(fiber, med) and is_iso(fiber, med)):
                ok = False
                rs.add(failed("topos.sub.image", "mono-is-its-image", {}))
    if ok:
        rs.add(passed("topos.sub.mono", "subobjects-are-strict-predicates"))
    return rs


def delta_audit(fiber: LogicFiber, max_index: int = 2) -> ReportSet:
    rs = ReportSet()
    sizes = range(max_index + 1)
    ok_full = ok_faithful = ok_cover = True
    for msize in sizes:
        M = fs("M", list(range(msize)))
        for nsize in range(1, max_index + 1):
            N = fs("N", list(range(nsize)))
            dm, dn = delta_object(fiber, M), delta_object(fiber, N)
            homs = hom_classes(fiber, dm, dn)
            funs = list(FinFun(M, N, t) for t in itertools.product(range(nsize), repeat=msize))
            if len(homs) != len(funs):
                ok_full = False
                rs.add(
                    failed(
                        "topos.delta.full",
                        "constants-full",
                        {"M": msize, "N": nsize, "homs": len(homs), "functions": len(funs)},
                    )
                )
            images = []
            for h in funs:
                dh = delta_of_map(fiber, h)
                images.append(dh)
                if h.is_surjective() and not is_cover(fiber, dh):
                    ok_cover = False
                    rs.add(failed("topos.delta.cover", "constants-preserve-covers", {}))
                if not h.is_surjective() and is_cover(fiber, dh):
                    ok_cover = False
                    rs.add(failed("topos.delta.cover", "constants-reflect-covers", {}))
            for h1, d1 in zip(funs, images):
                for h2, d2 in zip(funs, images):
                    if (h1.table == h2.table) != morphism_equal(fiber, d1, d2):
                        ok_faithful = False
                        rs.add(failed("topos.delta.faithful", "constants-faithful", {}))
    if ok_full:
        rs.add(passed("topos.delta.full", "constants-full"))
    if ok_faithful:
        rs.add(passed("topos.delta.faithful", "constants-faithful"))
    if ok_cover:
        rs.add(passed("topos.delta.cover", "constants-match-covers"))

    # preservation of finite products: Delta(M x N) is a product of the
    # constants through the canonical projections
    M, N = fs("M", [0, 1]), fs("N", ["x"])
    dmn = delta_object(fiber, product_finset(M, N))
    dm, dn = delta_object(fiber, M), delta_object(fiber, N)
    p1 = delta_of_map(fiber, FinFun.from_map(product_finset(M, N), M, lambda p: p[0]))
    p2 = delta_of_map(fiber, FinFun.from_map(product_finset(M, N), N, lambda p: p[1]))
    prod, pi1, pi2 = product(fiber, dm, dn)
    med = pair_into_product(fiber, prod, p1, p2)
    ok = is_morphism(fiber, med) and is_iso(fiber, med)
    rs.add(
        passed("topos.delta.products", "constants-preserve-products")
        if ok
        else failed("topos.delta.products", "constants-preserve-products", {})
    )
    return rs


def fiber_reconstruction_audit(fiber: LogicFiber, max_index: int = 3) -> ReportSet:
    """Strict predicates on constant objects, ordered by entailment, agree
    with the fiber itself."""
    rs = ReportSet()
    ok = True
    for size in range(max_index + 1):
        M = fs("M", list(range(size)))
        dm = delta_object(fiber, M)
        preds = list(fiber.predicates_on(M))
        for p in preds:
            # on constant objects every predicate is strict
            if not strict_check(fiber, dm, p):
                ok = False
                rs.add(failed("topos.reconstruct", "predicates-strict-on-constants", {"index": size}))
                break
        # fiber entailment agrees with the subobject order: the inclusion of
        # the p-subobject factors through the q-assembly exactly when p |- q
        for p in preds:
            for q in preds:
                sub_p, incl_p = subobject_from_strict(fiber, dm, p)
                factor = PerMorphism(sub_p, assembly(fiber, M, q), incl_p.phi)
                lhs = fiber.entails(p, q)
                rhs = is_morphism(fiber, factor)
                if lhs != rhs:
                    ok = False
                    rs.add(
                        failed(
                            "topos.reconstruct",
                            "fiber-order-matches-subobjects",
                            {"index": size},
                        )
                    )
    if ok:
        rs.add(passed("topos.reconstruct", "fiber-order-matches-subobjects"))
    return rs


def assemblies_audit(fiber: LogicFiber, max_index: int = 2) -> ReportSet:
    rs = ReportSet()
    ok_sep = ok_fix = ok_pi = True
    for size in range(1, max_index + 1):
        M = fs("M", list(range(size)))
        for phi in fiber.predicates_on(M):
            asm = assembly(fiber, M, phi)
            if not is_separated(fiber, asm):
                ok_sep = False
                rs.add(failed("topos.asm.separated", "assemblies-separated", {"index": size}))
                continue
            refl = separated_reflection(fiber, asm)
            if not is_iso(fiber, refl):
                ok_fix = False
                rs.add(failed("topos.asm.reflect", "reflection-fixes-assemblies", {"index": size}))
            if set(pi_object(fiber, asm).elements) != set(fiber.pi(phi)):
                ok_pi = False
                rs.add(failed("topos.asm.support", "reflection-is-support", {"index": size}))
    if ok_sep:
        rs.add(passed("topos.asm.separated", "assemblies-separated"))
    if ok_fix:
        rs.add(passed("topos.asm.reflect", "reflection-fixes-assemblies"))
    if ok_pi:
        rs.add(passed("topos.asm.support", "reflection-is-support"))

    for size in range(max_index + 1):
        M = fs("M", list(range(size)))
        rs.extend(counit_audit(fiber, M))
    rs.extend(gamma_pullback_audit(fiber, fs("M", [0, 1])))
    return rs
