import itertools

import pytest

import upo.dlogic as dl
from upo.relcore import FinFun, FinSet, Rel, all_functions, fs
from upo.meets import semilattice_meets
from upo.uord import (
    MonotoneMap,
    Predicate,
    all_predicates,
    entails,
    from_preorder,
    is_monotone,
    map_leq,
    one_point,
)


def chain_uord(n, name=None):
    car = fs(name or f"chain{n}", list(range(n)))
    leq = Rel.from_pairs(car, car, [(a, b) for a in range(n) for b in range(n) if a <= b])
    return from_preorder(leq, name or f"chain{n}")


def diamond_uord():
    car = fs("diamond", ["0", "a", "b", "1"])
    le = {("0", x) for x in car} | {(x, "1") for x in car} | {(x, x) for x in car}
    return from_preorder(Rel.from_pairs(car, car, sorted(le)), "diamond")


def diamond_meet(x, y):
    if x == y:
        return x
    if x == "1":
        return y
    if y == "1":
        return x
    return "0"


TWO = chain_uord(2, "two")
TWO_M = semilattice_meets(TWO, min, 1)
DTWO = dl.build_D(TWO)
POINT = one_point()
POINT_M = semilattice_meets(POINT, lambda a, b: "*", "*")


class TestBuild:
    def test_point_powerset(self):
        dp = dl.build_D(POINT)
        assert [sorted(e) for e in dp.carrier("*").elements] == [[], ["*"]]
        M = fs("M", [0])
        empty = dl.dpredicate(dp, M, "*", [frozenset()])
        full = dl.dpredicate(dp, M, "*", [frozenset(["*"])])
        assert entails(dp, empty, full)
        assert not entails(dp, full, empty)

    def test_two_chain_bracket_oracle(self):
        # membership agrees with the definitional bracket on every pair
        (r,) = TWO.base_at("*", "*")
        (br,) = DTWO.base_at("*", "*")
        for m in DTWO.carrier("*").elements:
            for n in DTWO.carrier("*").elements:
                expect = all(any(r.holds(x, y) for y in n) for x in m)
                assert br.holds(m, n) == expect

    def test_two_chain_expected_order(self):
        M = fs("M", [0])

        def pred(v):
            return dl.dpredicate(DTWO, M, "*", [frozenset(v)])

        assert entails(DTWO, pred([0]), pred([1]))
        assert entails(DTWO, pred([0, 1]), pred([1]))
        assert not entails(DTWO, pred([1]), pred([0]))
        # vacuous quantifier: empty below everything, above only itself
        for v in ([], [0], [1], [0, 1]):
            assert entails(DTWO, pred([]), pred(v))
            assert entails(DTWO, pred(v), pred([])) == (not v)

    def test_dplus_excludes_empty(self):
        dp = dl.build_Dplus(TWO)
        assert frozenset() not in dp.carrier("*").elements
        assert len(dp.carrier("*")) == 3

    def test_u_dualizes(self):
        up = dl.build_U(TWO)
        (r,) = TWO.base_at("*", "*")
        (br,) = up.base_at("*", "*")
        for m in up.carrier("*").elements:
            for n in up.carrier("*").elements:
                expect = all(any(r.holds(x, y) for x in m) for y in n)
                assert br.holds(m, n) == expect

    def test_size_guard(self):
        big = chain_uord(13)
        with pytest.raises(Exception):
            dl.build_D(big)

    def test_functorial_on_maps(self):
        # D of a monotone map is monotone and preserves the 2-cell order
        car = TWO.carrier("*")
        maps = [
            MonotoneMap(TWO, TWO, {"*": "*"}, {"*": f})
            for f in all_functions(car, car)
        ]
        maps = [f for f in maps if is_monotone(f)]
        dmaps = {id(f): dl.d_of_map(f, DTWO, DTWO) for f in maps}
        for f in maps:
            assert is_monotone(dmaps[id(f)])
        for f in maps:
            for g in maps:
                if map_leq(f, g):
                    assert map_leq(dmaps[id(f)], dmaps[id(g)])


class TestMonadAudit:
    def test_point_passes(self):
        assert dl.monad_audit(POINT).all_pass

    def test_two_chain_passes(self):
        assert dl.monad_audit(TWO).all_pass

    def test_three_chain_passes(self):
        assert dl.monad_audit(chain_uord(3)).all_pass

    def test_corrupted_multiplication_fails_kz(self):
        # union replaced by intersection: the KZ unit law breaks
        def intersect_all(x):
            out = None
            for m in x:
                out = m if out is None else out & m
            return out if out is not None else frozenset()

        car = DTWO.carrier("*")
        structure = FinFun.from_map(
            dl.powerset_finset(car), car, intersect_all
        )
        assert dl.kz_unit_holds_for(TWO, DTWO, FinFun.from_map(dl.powerset_finset(car), car, dl.mu_fun), "*")
        assert not dl.kz_unit_holds_for(TWO, DTWO, structure, "*")


class TestExistsAndSpans:
    def test_identity_leg(self):
        M = fs("M", [0, 1])
        p = dl.dpredicate(DTWO, M, "*", [frozenset([0]), frozenset([1])])
        out = dl.dexists(DTWO, p, FinFun.identity(M))
        assert dl.values_of(out) == dl.values_of(p)

    def test_collapse_unions(self):
        M = fs("M", [0, 1])
        N = fs("N", ["n"])
        p = dl.dpredicate(DTWO, M, "*", [frozenset([0]), frozenset([1])])
        out = dl.dexists(DTWO, p, FinFun.constant(M, N, "n"))
        assert dl.values_of(out) == (frozenset([0, 1]),)

    def test_span_translation_round_trip(self):
        for size in (0, 1, 2, 3):
            M = fs("M", list(range(size)))
            for p in all_predicates(DTWO, M):
                sp = dl.powerset_to_span(DTWO, p)
                back = dl.span_to_powerset(DTWO, sp)
                assert entails(DTWO, p, back) and entails(DTWO, back, p)

    def test_exists_generation_by_singletons(self):
        # every powerset predicate is the existential of a singleton-valued
        # one along its support leg, up to mutual entailment
        for size in (1, 2, 3):
            M = fs("M", list(range(size)))
            for p in all_predicates(DTWO, M):
                sp = dl.powerset_to_span(DTWO, p)
                again = dl.dexists(DTWO, dl.y_image(DTWO, sp.pred), sp.leg)
                assert entails(DTWO, p, again) and entails(DTWO, again, p)

    def test_kleisli_extensions_order_reflect(self):
        # existential-preserving maps out of the powerset structure are
        # determined by their restriction along the singleton embedding
        car = TWO.carrier("*")
        pcar = DTWO.carrier("*")
        exts = []
        for f in all_functions(car, pcar):
            ext = MonotoneMap(
                DTWO,
                DTWO,
                {"*": "*"},
                {
                    "*": FinFun.from_map(
                        pcar,
                        pcar,
                        lambda m, f=f: frozenset(b for a in m for b in f(a)),
                    )
                },
            )
            if is_monotone(ext):
                exts.append((f, ext))
        y = dl.eta_map(TWO, DTWO)
        for f1, e1 in exts:
            for f2, e2 in exts:
                if map_leq(y.then(e1), y.then(e2)):
                    assert map_leq(e1, e2)


class TestAlgebras:
    def test_free_algebra_passes(self):
        ddtwo = dl.build_D(DTWO)
        mu = dl.mu_map(ddtwo, DTWO)
        assert dl.algebra_audit(DTWO, ddtwo, mu).all_pass

    def test_join_algebra_on_chain_passes(self):
        car = TWO.carrier("*")
        structure = MonotoneMap(
            DTWO,
            TWO,
            {"*": "*"},
            {"*": FinFun.from_map(DTWO.carrier("*"), car, lambda m: max(m, default=0))},
        )
        assert dl.algebra_audit(TWO, DTWO, structure).all_pass

    def test_discrete_two_admits_no_algebra(self):
        car = fs("d2", [0, 1])
        disc = from_preorder(Rel.identity(car), "disc2")
        ddisc = dl.build_D(disc)
        found = []
        for f in all_functions(ddisc.carrier("*"), car):
            cand = MonotoneMap(ddisc, disc, {"*": "*"}, {"*": f})
            if dl.algebra_audit(disc, ddisc, cand).all_pass:
                found.append(f)
        assert found == []


class TestFrame:
    def test_two_chain_frame(self):
        rep = dl.frame_audit(TWO, TWO_M, DTWO, max_index=2)
        assert rep.all_pass, rep.render_text()

    def test_diamond_frame(self):
        dia = diamond_uord()
        m = semilattice_meets(dia, diamond_meet, "1")
        rep = dl.frame_audit(dia, m, max_index=1)
        assert rep.all_pass, rep.render_text()

    def test_y_meet_preservation_on_diamond(self):
        dia = diamond_uord()
        m = semilattice_meets(dia, diamond_meet, "1")
        ddia = dl.build_D(dia)
        dm = dl.d_meet_data(ddia, m)
        for a in dia.carrier("*"):
            for b in dia.carrier("*"):
                assert dm.meet("*", "*", frozenset([a]), frozenset([b])) == frozenset(
                    [diamond_meet(a, b)]
                )

    def test_y_order_reflecting(self):
        M = fs("M", [0, 1])
        for p in all_predicates(TWO, M):
            for q in all_predicates(TWO, M):
                assert entails(TWO, p, q) == entails(
                    DTWO, dl.y_image(DTWO, p), dl.y_image(DTWO, q)
                )


class TestLiftedConnectives:
    def setup_method(self):
        self.alg = dl.semilattice_u_algebra(TWO, TWO_M, min)
        self.imp = dl.semilattice_implies(TWO, lambda a, b: 1 if a <= b else b)
        self.fib = dl.DFiber(TWO, TWO_M, DTWO).attach_lifted(self.alg, self.imp)

    def test_source_audits(self):
        assert dl.audit_u_algebra(TWO, self.alg).all_pass
        assert dl.audit_source_implies(TWO, TWO_M, self.imp).all_pass

    def test_residuation_exhaustive(self):
        for size in (1, 2):
            M = fs("M", list(range(size)))
            preds = list(all_predicates(DTWO, M))
            for p, q, chi in itertools.product(preds, repeat=3):
                lhs = self.fib.entails(chi, self.fib.implies(p, q))
                rhs = self.fib.entails(self.fib.meet(chi, p), q)
                assert lhs == rhs

    def test_forall_mate_exhaustive(self):
        for msize in (1, 2):
            M = fs("M", list(range(msize)))
            for nsize in (1, 2):
                N = fs("N", list(range(nsize)))
                for h in all_functions(M, N):
                    for p in all_predicates(DTWO, M):
                        fa = self.fib.forall_along(p, h)
                        for chi in all_predicates(DTWO, N):
                            assert self.fib.entails(chi, fa) == self.fib.entails(
                                self.fib.reindex(chi, h), p
                            )

    def test_top_implies_is_identity(self):
        M = fs("M", [0, 1])
        top = self.fib.top(M)
        for q in all_predicates(DTWO, M):
            it = self.fib.implies(top, q)
            assert self.fib.entails(it, q) and self.fib.entails(q, it)

    def test_y_preserves_connectives(self):
        M = fs("M", [0])
        for a in (0, 1):
            for b in (0, 1):
                pa = dl.dpredicate(DTWO, M, "*", [frozenset([a])])
                pb = dl.dpredicate(DTWO, M, "*", [frozenset([b])])
                imp = self.fib.implies(pa, pb)
                want = dl.dpredicate(
                    DTWO, M, "*", [frozenset([1 if a <= b else b])]
                )
                assert self.fib.entails(imp, want) and self.fib.entails(want, imp)


class TestPrimality:
    def all_dpreds(self, size):
        M = fs("M", list(range(size)))
        return M, list(all_predicates(DTWO, M))

    def test_singletons_yes_exhaustive(self):
        for size in (0, 1, 2, 3):
            M, preds = self.all_dpreds(size)
            for p in preds:
                if all(len(p.value(x)) == 1 for x in M.elements):
                    assert dl.is_prime(DTWO, p).verdict is True

    def test_constant_empty_no_with_span(self):
        M = fs("M", ["m"])
        p = dl.dpredicate(DTWO, M, "*", [frozenset()])
        res = dl.is_prime(DTWO, p)
        assert res.verdict is False
        assert res.counterexample["apex"] == []
        assert dl.replay_counterexample(DTWO, p)

    def test_interreducible_yes(self):
        M = fs("M", ["m"])
        p = dl.dpredicate(DTWO, M, "*", [frozenset([0, 1])])
        res = dl.is_prime(DTWO, p)
        assert res.verdict is True

    def test_exhaustive_classification_consistent(self):
        # a negative answer must replay; a positive answer means the support
        # span has a working section, so the replay must reject it
        for size in (1, 2, 3):
            M, preds = self.all_dpreds(size)
            for p in preds:
                res = dl.is_prime(DTWO, p)
                assert res.verdict is not None
                assert dl.replay_counterexample(DTWO, p) == (res.verdict is False)

    def test_span_input_accepted(self):
        N = fs("N", [0, 1])
        M = fs("M", ["m"])
        sp = dl.SpanPredicate(
            FinFun.constant(N, M, "m"),
            Predicate(N, "*", FinFun(N, TWO.carrier("*"), (0, 1))),
        )
        res = dl.is_prime(DTWO, sp)
        assert res.verdict is True  # {0,1} is interreducible to {1}


class TestSections:
    def test_gamma_on_two_chain(self):
        M = fs("M", ["x", "y", "z"])
        p = dl.dpredicate(
            DTWO, M, "*", [frozenset([0]), frozenset([0, 1]), frozenset()]
        )
        assert dl.gamma_d(DTWO, TWO_M, p) == frozenset(["y"])

    def test_delta_empty(self):
        M = fs("M", [0, 1])
        d = dl.delta_subset(DTWO, TWO_M, M, frozenset())
        assert dl.values_of(d) == (frozenset(), frozenset())

    def test_u_below_gamma_delta(self):
        M = fs("M", [0, 1, 2])
        for k in range(4):
            for U in itertools.combinations(M.elements, k):
                U = frozenset(U)
                assert U <= dl.gamma_d(DTWO, TWO_M, dl.delta_subset(DTWO, TWO_M, M, U))

    def test_total_connectedness(self):
        assert dl.total_connectedness_audit(DTWO, TWO_M, max_index=3).all_pass

    def test_pi_of_span_is_leg_image(self):
        N = fs("N", [0, 1])
        M = fs("M", ["a", "b", "c"])
        leg = FinFun.from_dict(N, M, {0: "a", 1: "a"})
        sp = dl.SpanPredicate(leg, Predicate(N, "*", FinFun(N, TWO.carrier("*"), (0, 1))))
        p = dl.span_to_powerset(DTWO, sp)
        assert dl.pi_support(p) == frozenset(["a"])


class TestGeometricInclusion:
    def test_two_chain_powerset_frame(self):
        frame = dl.frame_of_D(TWO, TWO_M)
        assert dl.geometric_inclusion_audit(frame).all_pass

    def test_point_frame(self):
        frame = dl.frame_of_D(POINT, POINT_M)
        assert dl.geometric_inclusion_audit(frame).all_pass

    def test_corrupted_algebra_fails(self):
        frame = dl.frame_of_D(TWO, TWO_M)

        def inter(x):
            out = None
            for m in x:
                out = m if out is None else out & m
            return out if out is not None else frozenset()

        bad = MonotoneMap(
            frame.du,
            frame.u,
            {"*": "*"},
            {"*": FinFun.from_map(frame.du.carrier("*"), frame.u.carrier("*"), inter)},
        )
        frame.structure = bad
        rep = dl.geometric_inclusion_audit(frame)
        assert not rep.all_pass


class TestHeytingFiber:
    def test_chain_algebra_laws(self):
        H = dl.chain_heyting(3)
        assert H.meet(1, 2) == 1 and H.join(1, 2) == 2
        assert H.implies(2, 1) == 1 and H.implies(1, 2) == 2

    def test_diamond_implies(self):
        H = dl.diamond_heyting()
        assert H.implies("a", "b") == "b"
        assert H.implies("a", "0") == "b"  # pseudocomplement of an atom
        assert H.implies("0", "a") == "1"

    def test_fiber_frame_laws(self):
        fib = dl.HeytingFiber(dl.chain_heyting(3))
        M = fs("M", [0, 1])
        N = fs("N", ["n"])
        h = FinFun.constant(M, N, "n")
        preds = list(fib.predicates_on(M))
        for p in preds:
            ex = fib.exists_along(p, h)
            for q in fib.predicates_on(N):
                assert fib.entails(ex, q) == fib.entails(p, fib.reindex(q, h))
                # Frobenius
                lhs = fib.meet(q, ex)
                rhs = fib.exists_along(fib.meet(fib.reindex(q, h), p), h)
                assert lhs == rhs

    def test_delta_preserves_bottom_and_implication(self):
        # chain fibers are totally connected; delta matches subset logic
        fib = dl.HeytingFiber(dl.chain_heyting(3))
        M = fs("M", [0, 1])
        subsets = [frozenset(c) for k in range(3) for c in itertools.combinations(M.elements, k)]
        assert fib.delta(M, frozenset()).values == fib.bottom(M).values
        for U in subsets:
            for V in subsets:
                impl = frozenset(m for m in M.elements if (m not in U) or (m in V))
                lhs = fib.delta(M, impl)
                rhs = fib.implies(fib.delta(M, U), fib.delta(M, V))
                assert fib.entails(lhs, rhs) and fib.entails(rhs, lhs)

    def test_dfiber_delta_preserves_bottom_and_implication(self):
        alg = dl.semilattice_u_algebra(TWO, TWO_M, min)
        imp = dl.semilattice_implies(TWO, lambda a, b: 1 if a <= b else b)
        fib = dl.DFiber(TWO, TWO_M, DTWO).attach_lifted(alg, imp)
        M = fs("M", [0, 1])
        subsets = [frozenset(c) for k in range(3) for c in itertools.combinations(M.elements, k)]
        bot = fib.bottom(M)
        dbot = fib.delta(M, frozenset())
        assert fib.entails(bot, dbot) and fib.entails(dbot, bot)
        for U in subsets:
            for V in subsets:
                impl = frozenset(m for m in M.elements if (m not in U) or (m in V))
                lhs = fib.delta(M, impl)
                rhs = fib.implies(fib.delta(M, U), fib.delta(M, V))
                assert fib.entails(lhs, rhs) and fib.entails(rhs, lhs)
