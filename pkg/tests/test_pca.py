import random

import pytest

from upo.pca import (
    App,
    Budget,
    Const,
    Defined,
    K,
    S,
    I,
    Var,
    bracket_abstract,
    bracket_abstract_many,
    check_sub_pca,
    check_typed_pca,
    derive_pairing,
    divergent,
    eval_term,
    identity_morphism,
    applicative_to_meetmap,
    meetmap_to_applicative,
    kleene_leq,
    one_sorted,
    parse,
    resolve,
    sk_pca,
    SubPcaData,
    TypedPcaData,
)
from upo.pca.sk import Ap, is_normal

FUEL = 10_000
PCA = sk_pca()


def sk_samples(n):
    return PCA.sample(n)


class TestSkMachine:
    def test_k_axiom_instance(self):
        out = PCA.apply_many(K, [S, K], 10)
        assert out == Defined(S)

    def test_divergent_budget_any_fuel(self):
        d = divergent()
        for fuel in (10, 100, 1000, 20_000):
            assert isinstance(PCA.apply(d.fun, d.arg, fuel), Budget)

    def test_sxy_defined_for_all_normal_forms(self):
        elems = sk_samples(15)
        for x in elems:
            for y in elems:
                out = PCA.apply_many(S, [x, y], FUEL)
                assert isinstance(out, Defined)
                assert is_normal(out.value)

    def test_k_axiom_on_100_triples(self):
        elems = sk_samples(10)
        count = 0
        for x in elems:
            for y in elems:
                assert PCA.apply_many(K, [x, y], FUEL) == Defined(x)
                count += 1
        assert count >= 100

    def test_s_axiom_on_100_triples(self):
        elems = sk_samples(5)
        count = 0
        for x in elems:
            for y in elems:
                for z in elems:
                    lhs = PCA.apply_many(S, [x, y, z], FUEL)
                    xz = PCA.apply(x, z, FUEL)
                    yz = PCA.apply(y, z, FUEL)
                    if isinstance(xz, Defined) and isinstance(yz, Defined):
                        rhs = PCA.apply(xz.value, yz.value, FUEL)
                    else:
                        rhs = Budget()
                    assert kleene_leq(lhs, rhs)
                    count += 1
        assert count >= 100

    def test_fuel_monotone(self):
        elems = sk_samples(8)
        for a in elems:
            for b in elems:
                for fuel in (1, 2, 5, 50):
                    lo = PCA.apply(a, b, fuel)
                    hi = PCA.apply(a, b, 2 * fuel)
                    if isinstance(lo, Defined):
                        assert hi == lo

    def test_enumeration_stable_and_whnf(self):
        first = sk_samples(40)
        again = sk_samples(40)
        assert first == again
        assert all(is_normal(t) for t in first)


def random_term(rng, depth, vars=("x",)):
    if depth == 0 or rng.random() < 0.3:
        choices = [Const(K), Const(S)] + [Var(v) for v in vars]
        return rng.choice(choices)
    return App(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars))


class TestEval:
    def test_const(self):
        assert eval_term(PCA, Const(K), 5) == Defined(K)

    def test_k_applied(self):
        t = App(App(Const(K), Const(S)), Const(K))
        assert eval_term(PCA, t, 10) == Defined(S)

    def test_eval_agrees_with_apply_folding(self):
        rng = random.Random(7)
        for _ in range(150):
            t = random_term(rng, 4, vars=())

            def fold(t):
                if isinstance(t, Const):
                    return Defined(t.value)
                f = fold(t.fun)
                if not isinstance(f, Defined):
                    return f
                a = fold(t.arg)
                if not isinstance(a, Defined):
                    return a
                return PCA.apply(f.value, a.value, FUEL)

            got = eval_term(PCA, t, FUEL)
            expect = fold(t)
            # The shared budget can only make eval less defined, never change
            # a defined value.
            if isinstance(got, Defined):
                assert got == expect

    def test_unbound_variable_rejected(self):
        with pytest.raises(Exception):
            eval_term(PCA, Var("x"), 10)


class TestBracketAbstraction:
    def test_identity_case(self):
        t = bracket_abstract("x", Var("x"))
        for a in sk_samples(6):
            out = eval_term(PCA, App(t, Const(a)), FUEL)
            assert out == Defined(a)

    def test_kx_case(self):
        t = bracket_abstract("x", App(Const(K), Var("x")))
        for a in sk_samples(6):
            lhs = eval_term(PCA, App(t, Const(a)), FUEL)
            rhs = PCA.apply(K, a, FUEL)
            assert isinstance(lhs, Defined)
            assert lhs == rhs

    def test_two_variable_k_axiom_50_pairs(self):
        t = bracket_abstract_many(["x", "y"], Var("x"))
        elems = sk_samples(8)
        count = 0
        for a in elems:
            for b in elems:
                out = eval_term(PCA, App(App(t, Const(a)), Const(b)), FUEL)
                assert out == Defined(a)
                count += 1
        assert count >= 50

    def test_abstract_always_defined(self):
        rng = random.Random(11)
        for _ in range(100):
            body = random_term(rng, 4)
            t = bracket_abstract("x", body)
            assert isinstance(eval_term(PCA, t, FUEL), Defined)

    def test_kleene_inequality_100_random_terms(self):
        from upo.pca.terms import substitute

        rng = random.Random(13)
        args = sk_samples(4)
        for n in range(100):
            body = random_term(rng, 4)
            t = bracket_abstract("x", body)
            a = args[n % len(args)]
            lhs = eval_term(PCA, App(t, Const(a)), FUEL)
            rhs = eval_term(PCA, substitute(body, "x", Const(a)), FUEL)
            assert kleene_leq(lhs, rhs)


class TestPairing:
    def test_laws_on_50_pairs(self):
        pr = derive_pairing(PCA, FUEL)
        elems = sk_samples(8)
        count = 0
        for x in elems:
            for y in elems:
                pxy = PCA.apply_many(pr.pair, [x, y], FUEL)
                assert isinstance(pxy, Defined)
                assert PCA.apply(pr.fst, pxy.value, FUEL) == Defined(x)
                assert PCA.apply(pr.snd, pxy.value, FUEL) == Defined(y)
                count += 1
        assert count >= 50

    def test_fst_pair_k_s(self):
        pr = derive_pairing(PCA, FUEL)
        pks = PCA.apply_many(pr.pair, [K, S], FUEL)
        assert PCA.apply(pr.fst, pks.value, FUEL) == Defined(K)


class TestTypedChecks:
    def test_degenerate_singleton_passes(self):
        star = Defined("*")

        def apply(i, j, a, b, fuel):
            return star

        d = TypedPcaData(
            sorts=("i",),
            star=lambda i, j: "i",
            arrow=lambda i, j: "i",
            carriers={"i": ("*",)},
            apply=apply,
        )
        d.k[("i", "i")] = "*"
        d.s[("i", "i", "i")] = "*"
        d.pair[("i", "i")] = "*"
        d.fst[("i", "i")] = "*"
        d.snd[("i", "i")] = "*"
        assert check_typed_pca(d).all_pass

    def test_sk_wrapped_passes(self):
        pr = derive_pairing(PCA, FUEL)
        d = one_sorted(PCA, pair=pr.pair, fst=pr.fst, snd=pr.snd)
        report = check_typed_pca(d, samples=5, fuel=FUEL)
        assert report.ok, report.render_text()

    def test_k_swapped_for_s_fails(self):
        d = one_sorted(PCA)
        d.k[(0, 0)] = S  # wrong on purpose
        report = check_typed_pca(d, samples=5, fuel=FUEL)
        assert not report.ok
        bad = report.failures()[0]
        assert bad.law == "k-axiom"
        assert bad.witness is not None

    def test_sub_pca_whole_carrier_passes(self):
        d = one_sorted(PCA)
        sub = SubPcaData(d, lambda sort, a: True)
        assert check_sub_pca(sub, samples=6, fuel=FUEL).ok

    def test_sub_pca_only_k_fails(self):
        d = one_sorted(PCA)
        sub = SubPcaData(d, lambda sort, a: a == K)
        report = check_sub_pca(sub, samples=6, fuel=FUEL)
        assert not report.ok

    def test_sub_pca_closure_witness_replay(self):
        # membership excluding one reachable value must fail with a witness
        d = one_sorted(PCA)
        kk = PCA.apply(K, K, FUEL).value
        sub = SubPcaData(d, lambda sort, a: a != kk)
        report = check_sub_pca(sub, samples=6, fuel=FUEL)
        assert not report.ok
        w = report.failures()[0].witness
        assert w["value"] == kk


class TestApplicativeMorphisms:
    def test_identity_morphism_verifies(self):
        gamma = identity_morphism(PCA, FUEL)
        f, report = applicative_to_meetmap(gamma, samples=6, fuel=FUEL)
        assert report.ok, report.render_text()

    def test_wrong_realizer_refuted(self):
        gamma = identity_morphism(PCA, FUEL)
        broken = type(gamma)(PCA, PCA, gamma.gamma, K)  # k is not a realizer
        from upo.pca import verify_applicative

        report = verify_applicative(broken, samples=6, fuel=FUEL)
        assert not report.ok
        assert report.failures()[0].witness is not None

    def test_round_trip_preserves_gamma(self):
        gamma = identity_morphism(PCA, FUEL)
        f, rep1 = applicative_to_meetmap(gamma, samples=5, fuel=FUEL)
        assert rep1.ok
        gamma2, rep2 = meetmap_to_applicative(f, samples=5, fuel=FUEL)
        assert rep2.ok, rep2.render_text()
        for a in sk_samples(6):
            assert gamma2.gamma(a) == gamma.gamma(a)


class TestSurfaceSyntax:
    def test_parse_application_left_assoc(self):
        t = parse("f x y")
        assert str(t) == "f x y"

    def test_parse_abstraction_and_run(self):
        t = parse(r"\*x y. y x")
        t = resolve(t, {})
        out = eval_term(PCA, App(App(t, Const(K)), Const(S)), FUEL)
        assert out == PCA.apply(S, K, FUEL)

    def test_resolve_env(self):
        t = resolve(parse("K S"), {"K": K, "S": S})
        assert eval_term(PCA, t, FUEL) == PCA.apply(K, S, FUEL)
