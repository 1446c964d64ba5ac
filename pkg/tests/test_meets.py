import itertools

import pytest

from upo.meets import (
    CloneQuery,
    MeetData,
    clone_compose,
    clone_member,
    designated_truth_values,
    injectivity_check,
    predicate_meet,
    projection_query,
    semilattice_meets,
    top_predicate,
    verify_meets,
)
from upo.relcore import FinFun, Rel, all_functions, fs, graph, product_finset
from upo.uord import (
    all_predicates,
    entails,
    from_function_family,
    from_preorder,
    one_point,
)


def chain(n, name=None):
    car = fs(name or f"chain{n}", list(range(n)))
    leq = Rel.from_pairs(car, car, [(a, b) for a in range(n) for b in range(n) if a <= b])
    return from_preorder(leq, name or f"chain{n}")


def diamond_order():
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


TWO = chain(2, "two")
TWO_MEETS = semilattice_meets(TWO, min, 1)
DIAMOND = diamond_order()
DIAMOND_MEETS = semilattice_meets(DIAMOND, diamond_meet, "1")
POINT = one_point()
POINT_MEETS = semilattice_meets(POINT, lambda a, b: "*", "*")


class TestVerifyMeets:
    def test_two_chain_passes(self):
        assert verify_meets(TWO, TWO_MEETS).all_pass

    def test_one_point_passes(self):
        assert verify_meets(POINT, POINT_MEETS).all_pass

    def test_diamond_passes(self):
        assert verify_meets(DIAMOND, DIAMOND_MEETS).all_pass

    def test_swapped_meet_fails_projection(self):
        # a "meet" that is not a lower bound breaks the projection condition
        def bogus(x, y):
            return "1"

        m = semilattice_meets(DIAMOND, bogus, "1")
        report = verify_meets(DIAMOND, m)
        assert not report.ok
        assert any(r.law == "wedge-below-left" for r in report.failures())

    def test_fibrational_reading(self):
        # p /\ q |- p and p |- p /\ p on all small predicates
        for size in (1, 2, 3):
            M = fs("M", list(range(size)))
            preds = list(all_predicates(TWO, M))
            for p, q in itertools.product(preds, repeat=2):
                meet = predicate_meet(TWO, TWO_MEETS, p, q)
                assert entails(TWO, meet, p)
                assert entails(TWO, meet, q)
                assert entails(TWO, p, predicate_meet(TWO, TWO_MEETS, p, p))
            top = top_predicate(TWO, TWO_MEETS, M)
            for p in preds:
                assert entails(TWO, p, top)


class TestInjectivity:
    def test_one_point_injective(self):
        assert injectivity_check(POINT, POINT_MEETS).all_pass

    def test_two_chain_not_applicable(self):
        report = injectivity_check(TWO, TWO_MEETS)
        assert report.reports[0].verdict.value == "unknown"

    def test_functional_with_big_carrier_must_fail(self):
        # |A|^2 > |A| forces the pairing map to collide somewhere
        car = fs("c", [0, 1])
        u = from_function_family(car, [Rel.identity(car)])
        m = MeetData(
            unit="*",
            top=0,
            star={("*", "*"): "*"},
            wedge={("*", "*"): FinFun.from_map(product_finset(car, car), car, lambda p: min(p))},
        )
        report = injectivity_check(u, m)
        assert not report.ok


class TestClone:
    def test_projections_are_members(self):
        for n in (1, 2, 3):
            sorts = ("*",) * n
            for l in range(n):
                q = projection_query(TWO, sorts, l)
                assert clone_member(TWO, TWO_MEETS, q)

    def test_wedge_graph_is_member(self):
        rel = frozenset(
            (((a, b)), min(a, b))
            for a in (0, 1)
            for b in (0, 1)
        )
        q = CloneQuery(("*", "*"), "*", frozenset(((a, b), min(a, b)) for a in (0, 1) for b in (0, 1)))
        assert clone_member(TWO, TWO_MEETS, q)

    def test_full_relation_not_member_on_chain(self):
        q = CloneQuery(
            ("*",), "*", frozenset(((a,), b) for a in (0, 1) for b in (0, 1))
        )
        assert not clone_member(TWO, TWO_MEETS, q)

    def test_composition_closed_exhaustive(self):
        # all unary members composed with unary members stay members
        car = TWO.carrier("*")
        unary = []
        for rel in itertools.product([0, 1], repeat=4):
            pairs = frozenset(
                ((a,), b)
                for n, (a, b) in enumerate(itertools.product([0, 1], repeat=2))
                if rel[n]
            )
            q = CloneQuery(("*",), "*", pairs)
            if clone_member(TWO, TWO_MEETS, q):
                unary.append(q)
        assert unary
        for s, r in itertools.product(unary, repeat=2):
            comp = clone_compose(TWO, TWO_MEETS, s, [r])
            assert clone_member(TWO, TWO_MEETS, comp)

    def test_compose_with_projection_is_reindexing(self):
        q = projection_query(TWO, ("*", "*"), 0)
        r1 = projection_query(TWO, ("*",), 0)
        comp = clone_compose(TWO, TWO_MEETS, q, [r1, r1])
        assert comp.relation == r1.relation

    def test_parenthesization_independence(self):
        # membership at arity 3 does not depend on the argument order used
        # to compute the triple meet
        sorts = ("*", "*", "*")
        car = TWO.carrier("*")
        m = TWO_MEETS
        rels = []
        space = list(itertools.product([0, 1], repeat=3))
        import random

        rng = random.Random(3)
        for _ in range(40):
            rel = frozenset(
                (args, rng.choice([0, 1])) for args in space if rng.random() < 0.5
            )
            rels.append(CloneQuery(sorts, "*", rel))
        for q in rels:
            member_left = clone_member(TWO, m, q)
            # right-associated / permuted meet oracle
            def alt_member():
                isort = "*"
                for r in TWO.base_at("*", "*"):
                    if all(
                        r.holds(min(args[2], min(args[1], args[0])), b)
                        for args, b in q.relation
                    ):
                        return True
                return False

            assert member_left == alt_member()


class TestDesignated:
    def test_two_chain_only_top_designated(self):
        d = designated_truth_values(TWO, TWO_MEETS)
        assert d["*"] == (1,)

    def test_one_point_designated(self):
        d = designated_truth_values(POINT, POINT_MEETS)
        assert d["*"] == ("*",)

    def test_criterion_distinguishes_instances(self):
        # all truth values designated on the point, not on the chain
        d_point = designated_truth_values(POINT, POINT_MEETS)
        d_two = designated_truth_values(TWO, TWO_MEETS)
        assert len(d_point["*"]) == len(POINT.carrier("*"))
        assert len(d_two["*"]) < len(TWO.carrier("*"))
