import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from upo.relcore import (
    FinFun,
    FinSet,
    Rel,
    RelError,
    all_functions,
    all_relations,
    box_product,
    compose,
    contained,
    fs,
    graph,
    image_relation,
    opposite,
    product_finset,
)

A = fs("A", ["a0", "a1", "a2"])
B = fs("B", ["b0", "b1", "b2"])
C = fs("C", ["c0", "c1", "c2"])
N5 = fs("N5", list(range(5)))


def rel_strategy(src, dst):
    n = len(src) * len(dst)
    return st.integers(min_value=0, max_value=(1 << n) - 1).map(
        lambda code: Rel(
            src,
            dst,
            tuple((code >> (i * len(dst))) & ((1 << len(dst)) - 1) for i in range(len(src))),
        )
    )


def brute_compose(r, s):
    # definitional double loop
    pairs = [
        (a, c)
        for a in r.src.elements
        for c in s.dst.elements
        if any(r.holds(a, b) and s.holds(b, c) for b in r.dst.elements)
    ]
    return Rel.from_pairs(r.src, s.dst, pairs)


class TestCompose:
    def test_identity_left(self):
        r = Rel.from_pairs(A, B, [("a0", "b1"), ("a2", "b0")])
        assert compose(Rel.identity(A), r) == r
        assert compose(r, Rel.identity(B)) == r

    def test_single_chain(self):
        n = fs("n", [0, 1, 2])
        r = Rel.from_pairs(n, n, [(0, 1)])
        s = Rel.from_pairs(n, n, [(1, 2)])
        assert list(compose(r, s).pairs()) == [(0, 2)]

    @given(rel_strategy(N5, N5), rel_strategy(N5, N5))
    @settings(max_examples=60)
    def test_against_definitional_oracle(self, r, s):
        assert compose(r, s) == brute_compose(r, s)

    def test_dimension_mismatch(self):
        r = Rel.from_pairs(A, B, [])
        with pytest.raises(RelError):
            compose(r, Rel.from_pairs(A, B, []))

    def test_associative_exhaustive_size2(self):
        two = fs("two", [0, 1])
        rels = list(all_relations(two, two))
        for r, s, t in itertools.product(rels, repeat=3):
            assert compose(compose(r, s), t) == compose(r, compose(s, t))


class TestOpposite:
    def test_identity(self):
        assert opposite(Rel.identity(A)) == Rel.identity(A)

    def test_single_pair(self):
        n = fs("n", [0, 1])
        assert list(opposite(Rel.from_pairs(n, n, [(0, 1)])).pairs()) == [(1, 0)]

    @given(rel_strategy(A, B))
    @settings(max_examples=40)
    def test_involution(self, r):
        assert opposite(opposite(r)) == r

    @given(rel_strategy(A, B), rel_strategy(B, C))
    @settings(max_examples=40)
    def test_contravariant(self, r, s):
        assert opposite(compose(r, s)) == compose(opposite(s), opposite(r))


class TestBoxProduct:
    def test_identities(self):
        p = product_finset(A, B)
        assert box_product(Rel.identity(A), Rel.identity(B)) == Rel.identity(p)

    def test_empty_absorbs(self):
        s = Rel.from_pairs(B, B, [("b0", "b1")])
        assert box_product(Rel.empty(A, A), s).count() == 0

    @given(rel_strategy(A, B), rel_strategy(B, C))
    @settings(max_examples=40)
    def test_counting_oracle(self, r, s):
        assert box_product(r, s).count() == r.count() * s.count()

    def test_membership(self):
        r = Rel.from_pairs(A, A, [("a0", "a1")])
        s = Rel.from_pairs(B, B, [("b2", "b0")])
        p = box_product(r, s)
        assert p.holds(("a0", "b2"), ("a1", "b0"))
        assert not p.holds(("a0", "b0"), ("a1", "b0"))


class TestImageRelation:
    def test_identities_fix(self):
        r = Rel.from_pairs(A, B, [("a1", "b2")])
        assert image_relation(FinFun.identity(A), FinFun.identity(B), r) == r

    def test_constant_collapses(self):
        r = Rel.from_pairs(A, B, [("a0", "b0"), ("a1", "b2")])
        f = FinFun.constant(A, A, "a2")
        g = FinFun.constant(B, B, "b1")
        assert list(image_relation(f, g, r).pairs()) == [("a2", "b1")]

    @given(rel_strategy(A, B), st.integers(0, 8), st.integers(0, 8))
    @settings(max_examples=40)
    def test_pointwise_oracle(self, r, fi, gi):
        f = list(all_functions(A, A))[fi % 27]
        g = list(all_functions(B, B))[gi % 27]
        img = image_relation(f, g, r)
        expect = {(f(a), g(b)) for a, b in r.pairs()}
        assert set(img.pairs()) == expect

    def test_middle_identity_compat_exhaustive(self):
        two = fs("two", [0, 1])
        rels = list(all_relations(two, two))
        funs = list(all_functions(two, two))
        for f, g in itertools.product(funs, repeat=2):
            for r, s in itertools.product(rels, repeat=2):
                lhs = image_relation(f, g, compose(r, s))
                rhs = compose(
                    image_relation(f, FinFun.identity(two), r),
                    image_relation(FinFun.identity(two), g, s),
                )
                assert lhs == rhs


class TestPredicatesOnRel:
    def test_graph_functional_total(self):
        for f in all_functions(A, B):
            gr = graph(f)
            assert gr.is_functional() and gr.is_total()

    def test_empty_functional_not_total(self):
        e = Rel.empty(A, B)
        assert e.is_functional() and not e.is_total()

    @given(rel_strategy(A, B), rel_strategy(A, B))
    @settings(max_examples=40)
    def test_contained_matches_matrix_implication(self, r, s):
        expect = set(r.pairs()) <= set(s.pairs())
        assert contained(r, s) == expect

    @given(rel_strategy(A, B), rel_strategy(A, B), rel_strategy(A, B))
    @settings(max_examples=40)
    def test_contained_partial_order(self, r, s, t):
        assert contained(r, r)
        if contained(r, s) and contained(s, r):
            assert r == s
        if contained(r, s) and contained(s, t):
            assert contained(r, t)


def test_finset_rejects_duplicates():
    with pytest.raises(RelError):
        FinSet("bad", ("x", "x"))


def test_deterministic_pair_order():
    r = Rel.from_pairs(A, B, [("a2", "b0"), ("a0", "b2"), ("a0", "b1")])
    assert list(r.pairs()) == [("a0", "b1"), ("a0", "b2"), ("a2", "b0")]
