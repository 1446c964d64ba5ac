import itertools

import pytest

from upo.relcore import (
    FinFun,
    Rel,
    RelError,
    all_functions,
    all_relations,
    compose,
    contained,
    fs,
    graph,
    opposite,
)
from upo.uord import (
    MonotoneMap,
    Predicate,
    UOrd,
    all_predicates,
    check_modest,
    condensate,
    constant_predicate,
    coproduct,
    entails,
    from_function_family,
    from_preorder,
    generic_predicate,
    in_downclosure,
    is_bco,
    is_condensable,
    is_functional_uord,
    is_monotone,
    map_equiv,
    map_leq,
    one_point,
    oppose,
    product,
    reconstruct_from_fiber,
    validate_base,
)


def chain(n, name=None):
    car = fs(name or f"chain{n}", list(range(n)))
    leq = Rel.from_pairs(car, car, [(a, b) for a in range(n) for b in range(n) if a <= b])
    return from_preorder(leq, name or f"chain{n}")


def diamond():
    # bottom 0, incomparable a,b, top 1
    car = fs("diamond", ["0", "a", "b", "1"])
    le = {("0", x) for x in car} | {(x, "1") for x in car} | {(x, x) for x in car}
    return from_preorder(Rel.from_pairs(car, car, sorted(le)), "diamond")


TWO = chain(2, "two")
POINT = one_point()


def random_preorders_leq4():
    for n in (1, 2, 3):
        car = fs(f"c{n}", list(range(n)))
        for r in all_relations(car, car):
            if r.is_reflexive() and r.is_transitive():
                yield r


class TestBase:
    def test_two_chain_base(self):
        s = TWO.one_sort()
        (leq,) = TWO.base_at(s, s)
        assert set(leq.pairs()) == {(0, 0), (0, 1), (1, 1)}
        assert validate_base(TWO).all_pass

    def test_discrete_one_element(self):
        assert validate_base(POINT).all_pass

    def test_validate_random_preorders(self):
        for r in random_preorders_leq4():
            assert validate_base(from_preorder(r)).all_pass

    def test_base_missing_id_cover_fails(self):
        car = fs("c", [0, 1])
        bad = UOrd(
            "bad", ("*",), {"*": car}, {("*", "*"): (Rel.from_pairs(car, car, [(0, 0)]),)}
        )
        report = validate_base(bad)
        assert not report.ok
        assert report.failures()[0].witness == {"sorts": ["*"]}

    def test_non_preorder_refused(self):
        car = fs("c", [0, 1])
        not_refl = Rel.from_pairs(car, car, [(0, 0)])
        with pytest.raises(RelError):
            from_preorder(not_refl)

    def test_in_downclosure(self):
        s = TWO.one_sort()
        car = TWO.carrier(s)
        assert in_downclosure(Rel.empty(car, car), TWO, s, s)
        assert in_downclosure(Rel.identity(car), TWO, s, s)
        assert not in_downclosure(Rel.full(car, car), TWO, s, s)


class TestFunctionFamily:
    def test_identity_only(self):
        car = fs("c", [0, 1, 2])
        u = from_function_family(car, [Rel.identity(car)])
        assert validate_base(u).all_pass
        assert is_functional_uord(u)

    def test_two_commuting_permutations(self):
        car = fs("c", [0, 1, 2])
        rot = FinFun(car, car, (1, 2, 0))
        rot2 = rot.then(rot)
        funs = [Rel.identity(car), graph(rot), graph(rot2)]
        u = from_function_family(car, funs)
        assert validate_base(u).all_pass

    def test_non_closed_truncation_refused(self):
        car = fs("c", [0, 1, 2])
        succ = Rel.from_pairs(car, car, [(0, 1), (1, 2)])  # partial successor
        with pytest.raises(RelError):
            # id and succ; succ.succ = {(0,2)} is not under any member
            from_function_family(car, [Rel.identity(car), succ])


class TestEntails:
    def setup_method(self):
        self.M = fs("M", ["m0", "m1"])

    def test_reflexive(self):
        for p in all_predicates(TWO, self.M):
            assert entails(TWO, p, p)

    def test_two_chain_constants(self):
        p0 = constant_predicate(TWO, self.M, "*", 0)
        p1 = constant_predicate(TWO, self.M, "*", 1)
        assert entails(TWO, p0, p1)
        assert not entails(TWO, p1, p0)

    def test_preorder_on_small_index_sets(self):
        for size in (0, 1, 2, 3):
            M = fs("M", list(range(size)))
            preds = list(all_predicates(TWO, M))
            for p in preds:
                assert entails(TWO, p, p)
            for p, q, r in itertools.product(preds, repeat=3):
                if entails(TWO, p, q) and entails(TWO, q, r):
                    assert entails(TWO, p, r)

    def test_stable_under_reindexing(self):
        M = fs("M", [0, 1, 2])
        N = fs("N", [0, 1])
        preds = list(all_predicates(TWO, M))
        for h in all_functions(N, M):
            for p, q in itertools.product(preds, repeat=2):
                if entails(TWO, p, q):
                    assert entails(TWO, p.reindex(h), q.reindex(h))

    def test_prestack_condition_surjections(self):
        M = fs("M", [0, 1])
        K = fs("K", [0, 1, 2])
        surjs = [e for e in all_functions(K, M) if e.is_surjective()]
        preds = list(all_predicates(TWO, M))
        for e in surjs:
            for p, q in itertools.product(preds, repeat=2):
                if entails(TWO, p.reindex(e), q.reindex(e)):
                    assert entails(TWO, p, q)

    def test_index_mismatch_rejected(self):
        p = constant_predicate(TWO, fs("M", [0]), "*", 0)
        q = constant_predicate(TWO, fs("N", [0, 1]), "*", 0)
        with pytest.raises(RelError):
            entails(TWO, p, q)


class TestMonotoneMaps:
    def test_identity_monotone_and_leq(self):
        f = MonotoneMap.identity(TWO)
        assert is_monotone(f)
        assert map_leq(f, f)

    def test_constants_on_two_chain(self):
        s = TWO.one_sort()
        car = TWO.carrier(s)
        c0 = MonotoneMap(TWO, TWO, {s: s}, {s: FinFun.constant(car, car, 0)})
        c1 = MonotoneMap(TWO, TWO, {s: s}, {s: FinFun.constant(car, car, 1)})
        assert is_monotone(c0) and is_monotone(c1)
        assert map_leq(c0, c1)
        assert not map_leq(c1, c0)

    def test_map_leq_iff_entails_on_generics(self):
        # local-equivalence direction: f <= g iff f(iota) |- g(iota) since
        # every predicate is a reindexing of the generic one
        s = TWO.one_sort()
        car = TWO.carrier(s)
        maps = [
            MonotoneMap(TWO, TWO, {s: s}, {s: f})
            for f in all_functions(car, car)
        ]
        maps = [m for m in maps if is_monotone(m)]
        iota = generic_predicate(TWO, s)
        for f, g in itertools.product(maps, repeat=2):
            lhs = map_leq(f, g)
            rhs = entails(TWO, f.apply_predicate(iota), g.apply_predicate(iota))
            assert lhs == rhs
        # and pointwise on every small predicate
        M = fs("M", [0, 1])
        for f, g in itertools.product(maps, repeat=2):
            if map_leq(f, g):
                for p in all_predicates(TWO, M):
                    assert entails(TWO, f.apply_predicate(p), g.apply_predicate(p))


class TestConstructions:
    def test_product_with_point(self):
        prod = product([TWO, POINT])
        assert validate_base(prod).all_pass
        # projections to the first factor are mutually inverse up to 2-cells
        s = prod.sorts[0]
        car = prod.carrier(s)
        tcar = TWO.carrier("*")
        proj = MonotoneMap(prod, TWO, {s: "*"}, {s: FinFun.from_map(car, tcar, lambda e: e[0])})
        inj = MonotoneMap(TWO, prod, {"*": s}, {"*": FinFun.from_map(tcar, car, lambda a: (a, "*"))})
        assert is_monotone(proj) and is_monotone(inj)
        assert map_equiv(inj.then(proj), MonotoneMap.identity(TWO))
        assert map_equiv(proj.then(inj), MonotoneMap.identity(prod))

    def test_binary_product_entailment_componentwise(self):
        prod = product([TWO, TWO])
        assert validate_base(prod).all_pass
        M = fs("M", [0, 1])
        s = prod.sorts[0]
        for p in all_predicates(prod, M):
            for q in all_predicates(prod, M):
                left = Predicate(M, "*", FinFun.from_map(M, TWO.carrier("*"), lambda m: p.value(m)[0]))
                right = Predicate(M, "*", FinFun.from_map(M, TWO.carrier("*"), lambda m: p.value(m)[1]))
                qleft = Predicate(M, "*", FinFun.from_map(M, TWO.carrier("*"), lambda m: q.value(m)[0]))
                qright = Predicate(M, "*", FinFun.from_map(M, TWO.carrier("*"), lambda m: q.value(m)[1]))
                expect = entails(TWO, left, qleft) and entails(TWO, right, qright)
                assert entails(prod, p, q) == expect

    def test_coproduct_cross_entailment_false(self):
        cop = coproduct([TWO, TWO])
        assert validate_base(cop).all_pass
        M = fs("M", [0])
        p = constant_predicate(cop, M, (0, "*"), 0)
        q = constant_predicate(cop, M, (1, "*"), 0)
        assert entails(cop, p, p)
        assert not entails(cop, p, q)

    def test_oppose_involution(self):
        for u in (TWO, diamond(), product([TWO, TWO])):
            assert oppose(oppose(u)).base == u.base

    def test_oppose_flips_entailment(self):
        op = oppose(TWO)
        M = fs("M", [0])
        p0 = constant_predicate(op, M, "*", 0)
        p1 = constant_predicate(op, M, "*", 1)
        assert entails(op, p1, p0)
        assert not entails(op, p0, p1)


class TestReconstruction:
    def test_round_trip_two_chain(self):
        oracle = lambda p, q: entails(TWO, p, q)
        rec = reconstruct_from_fiber({"*": TWO.carrier("*")}, oracle)
        # recovered base equivalent to {<=} up to mutual containment
        (orig,) = TWO.base_at("*", "*")
        assert any(contained(orig, r) for r in rec.base_at("*", "*"))
        for r in rec.base_at("*", "*"):
            assert in_downclosure(r, TWO, "*", "*")

    def test_round_trip_point(self):
        oracle = lambda p, q: entails(POINT, p, q)
        rec = reconstruct_from_fiber({"*": POINT.carrier("*")}, oracle)
        assert validate_base(rec).all_pass

    def test_round_trip_product(self):
        prod = product([TWO, TWO])
        s = prod.sorts[0]
        oracle = lambda p, q: entails(prod, p, q)
        rec = reconstruct_from_fiber({s: prod.carrier(s)}, oracle)
        for r in rec.base_at(s, s):
            assert in_downclosure(r, prod, s, s)
        for r in prod.base_at(s, s):
            assert any(contained(r, t) for t in rec.base_at(s, s))

    def test_round_trip_entailment_equivalence(self):
        # the reconstructed structure decides entailment exactly like the
        # source on all predicates with small index sets
        oracle = lambda p, q: entails(TWO, p, q)
        rec = reconstruct_from_fiber({"*": TWO.carrier("*")}, oracle)
        for size in (0, 1, 2, 3):
            M = fs("M", list(range(size)))
            for p in all_predicates(TWO, M):
                for q in all_predicates(TWO, M):
                    assert entails(TWO, p, q) == entails(rec, p, q)

    def test_inconsistent_oracle_reported(self):
        with pytest.raises(RelError):
            reconstruct_from_fiber({"*": TWO.carrier("*")}, lambda p, q: False)


class TestModesty:
    def test_empty_index_modest(self):
        M = fs("M", [])
        p = Predicate(M, "*", FinFun(M, TWO.carrier("*"), ()))
        assert check_modest(TWO, p).verdict is True

    def test_generic_of_functional_modest(self):
        car = fs("c", [0, 1, 2])
        rot = FinFun(car, car, (1, 2, 0))
        u = from_function_family(car, [Rel.identity(car), graph(rot), graph(rot.then(rot))])
        res = check_modest(u, generic_predicate(u, "*"), bound=3)
        assert res.verdict is True and res.exact

    def test_two_chain_generic_not_modest(self):
        res = check_modest(TWO, generic_predicate(TWO, "*"), bound=3)
        assert res.verdict is False
        # witness span identifies the two points of the chain
        assert res.counterexample["K"] == 2

    def test_noninjective_on_functional_not_modest(self):
        car = fs("c", [0, 1])
        u = from_function_family(car, [Rel.identity(car)])
        M = fs("M", [0, 1])
        p = constant_predicate(u, M, "*", 0)
        res = check_modest(u, p, bound=3)
        assert res.verdict is False


class TestCondensateAndBco:
    def test_discrete_is_bco(self):
        car = fs("c", [0, 1])
        u = UOrd("disc", ("*",), {"*": car}, {("*", "*"): (Rel.identity(car),)})
        assert condensate(u) == Rel.identity(car)
        assert is_condensable(u)
        assert is_bco(u).verdict is True

    def test_preorder_instance_condensate_is_order(self):
        for u in (TWO, diamond()):
            s = u.one_sort()
            (leq,) = u.base_at(s, s)
            assert condensate(u) == leq
            assert is_condensable(u)
            assert is_bco(u).verdict is True

    def test_function_family_is_bco(self):
        car = fs("c", [0, 1, 2])
        rot = FinFun(car, car, (1, 2, 0))
        u = from_function_family(car, [Rel.identity(car), graph(rot), graph(rot.then(rot))])
        assert condensate(u) == Rel.identity(car)
        res = is_bco(u)
        assert res.verdict is True

    def test_two_chain_maps_into_functional_collapse(self):
        # monotone maps from the 2-chain into a functional structure have a
        # functional image of <=, which forces them to be constant-like
        car = fs("c", [0, 1, 2])
        rot = FinFun(car, car, (1, 2, 0))
        target = from_function_family(
            car, [Rel.identity(car), graph(rot), graph(rot.then(rot))]
        )
        s = TWO.one_sort()
        (leq,) = TWO.base_at(s, s)
        for f in all_functions(TWO.carrier(s), car):
            m = MonotoneMap(TWO, target, {s: "*"}, {s: f})
            if is_monotone(m):
                from upo.relcore import image_relation

                img = image_relation(f, f, leq)
                assert img.is_functional()
                # and the map factors through a single point up to iso
                assert f.table[0] == f.table[1]
