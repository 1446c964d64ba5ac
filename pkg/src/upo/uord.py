"""Finite uniform preorders: sorted carriers with a base of relations.

A base stores generators only; every membership question reduces to
containment under a base element (down-closures are never materialized).
The predicate semantics (`entails`) reads a predicate as a carrier-valued
family and asks whether the graph of a pair of predicates is covered by a
base relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from .relcore import (
    Element,
    FinFun,
    FinSet,
    Rel,
    RelError,
    all_functions,
    compose,
    contained,
    fs,
    graph,
    image_relation,
    opposite,
    tuple_finset,
)
from .reports import ReportSet, failed, passed, unknown

Sort = Any


@dataclass(frozen=True)
class UOrd:
    """Carriers indexed by sorts plus, per sort pair, a base of relations."""

    name: str
    sorts: tuple[Sort, ...]
    carriers: dict[Sort, FinSet]
    base: dict[tuple[Sort, Sort], tuple[Rel, ...]]

    def __post_init__(self) -> None:
        for i in self.sorts:
            if i not in self.carriers:
                raise RelError(f"sort {i!r} has no carrier")
        for (i, j), rels in self.base.items():
            if i not in self.carriers or j not in self.carriers:
                raise RelError(f"base indexed by unknown sorts ({i!r},{j!r})")
            for r in rels:
                if r.src != self.carriers[i] or r.dst != self.carriers[j]:
                    raise RelError(f"base relation at ({i!r},{j!r}) has wrong carriers")

    def carrier(self, i: Sort) -> FinSet:
        return self.carriers[i]

    def base_at(self, i: Sort, j: Sort) -> tuple[Rel, ...]:
        return self.base.get((i, j), ())

    def one_sort(self) -> Sort:
        if len(self.sorts) != 1:
            raise RelError(f"{self.name!r} is not one-sorted")
        return self.sorts[0]

    def max_carrier(self) -> int:
        return max((len(c) for c in self.carriers.values()), default=0)


def in_downclosure(r: Rel, u: UOrd, i: Sort, j: Sort) -> bool:
    """Is r contained in some base relation at (i, j)?"""
    if r.src != u.carrier(i) or r.dst != u.carrier(j):
        raise RelError(f"relation not typed {i!r} -> {j!r}")
    return any(contained(r, s) for s in u.base_at(i, j))


def validate_base(u: UOrd) -> ReportSet:
    """Exhaustively check both base axioms, listing every violation."""
    rs = ReportSet()
    missing_id = [
        i
        for i in u.sorts
        if not any(contained(Rel.identity(u.carrier(i)), s) for s in u.base_at(i, i))
    ]
    if missing_id:
        rs.add(failed("base.identity", "base-identity-cover", {"sorts": missing_id}))
    else:
        rs.add(passed("base.identity", "base-identity-cover", f"{len(u.sorts)} sorts"))

    violations = []
    checked = 0
    for i, j, k in itertools.product(u.sorts, repeat=3):
        for ri, r in enumerate(u.base_at(i, j)):
            for si, s in enumerate(u.base_at(j, k)):
                checked += 1
                if not in_downclosure(compose(r, s), u, i, k):
                    violations.append({"sorts": [i, j, k], "r": ri, "s": si})
    if violations:
        rs.add(failed("base.compose", "base-composition-cover", violations))
    else:
        rs.add(passed("base.compose", "base-composition-cover", f"{checked} composites"))
    return rs


def from_preorder(order: Rel, name: str = "preorder", sort: Sort = "*") -> UOrd:
    """One sort, base = the order relation; input must be a preorder."""
    if order.src != order.dst:
        raise RelError("preorder must relate a carrier to itself")
    if not order.is_reflexive():
        raise RelError("relation is not reflexive")
    if not order.is_transitive():
        raise RelError("relation is not transitive")
    return UOrd(name, (sort,), {sort: order.src}, {(sort, sort): (order,)})


def from_function_family(
    carrier: FinSet, funs: Sequence[Rel], name: str = "funfam", sort: Sort = "*"
) -> UOrd:
    """One sort, base = graphs of a family of partial functions.

    The family must contain the identity and be closed under composition up
    to base containment; a truncated family that fails closure is refused.
    """
    for f in funs:
        if f.src != carrier or f.dst != carrier:
            raise RelError("function family must act on the given carrier")
        if not f.is_functional():
            raise RelError(f"family member {f} is not a partial function")
    u = UOrd(name, (sort,), {sort: carrier}, {(sort, sort): tuple(funs)})
    report = validate_base(u)
    if not report.all_pass:
        bad = [r for r in report if not r.ok]
        raise RelError(f"function family is not a base: {[r.check for r in bad]}")
    return u


@dataclass(frozen=True)
class Predicate:
    """A carrier-valued family: an index set with a sort and an assignment."""

    M: FinSet
    sort: Sort
    phi: FinFun

    def __post_init__(self) -> None:
        if self.phi.src != self.M:
            raise RelError("predicate assignment not defined on its index set")

    def value(self, m: Element) -> Element:
        return self.phi(m)

    def reindex(self, h: FinFun) -> "Predicate":
        """Precompose with h : N -> M."""
        if h.dst != self.M:
            raise RelError("reindexing map has wrong codomain")
        return Predicate(h.src, self.sort, h.then(self.phi))


def generic_predicate(u: UOrd, i: Sort) -> Predicate:
    """The identity assignment on a carrier, the unit of all reindexing."""
    a = u.carrier(i)
    return Predicate(a, i, FinFun.identity(a))


def pair_graph(u: UOrd, p: Predicate, q: Predicate) -> Rel:
    if p.M != q.M:
        raise RelError("predicates indexed by different sets")
    return Rel.from_pairs(
        u.carrier(p.sort),
        u.carrier(q.sort),
        ((p.value(m), q.value(m)) for m in p.M),
    )


def entails(u: UOrd, p: Predicate, q: Predicate) -> bool:
    """Uniform entailment: the graph {(p m, q m)} is covered by a base
    relation."""
    return in_downclosure(pair_graph(u, p, q), u, p.sort, q.sort)


def constant_predicate(u: UOrd, M: FinSet, i: Sort, value: Element) -> Predicate:
    return Predicate(M, i, FinFun.constant(M, u.carrier(i), value))


def all_predicates(u: UOrd, M: FinSet) -> Iterator[Predicate]:
    """Every predicate on M, sorted by (sort position, assignment table)."""
    for i in u.sorts:
        for phi in all_functions(M, u.carrier(i)):
            yield Predicate(M, i, phi)


@dataclass(frozen=True)
class MonotoneMap:
    """A sort reassignment with a carrier function per sort."""

    src: UOrd
    dst: UOrd
    on_sorts: dict[Sort, Sort]
    funs: dict[Sort, FinFun]

    def fun(self, i: Sort) -> FinFun:
        return self.funs[i]

    def sort(self, i: Sort) -> Sort:
        return self.on_sorts[i]

    def __call__(self, i: Sort, a: Element) -> Element:
        return self.funs[i](a)

    def apply_predicate(self, p: Predicate) -> Predicate:
        return Predicate(p.M, self.sort(p.sort), p.phi.then(self.fun(p.sort)))

    def then(self, g: "MonotoneMap") -> "MonotoneMap":
        return MonotoneMap(
            self.src,
            g.dst,
            {i: g.sort(self.sort(i)) for i in self.src.sorts},
            {i: self.fun(i).then(g.fun(self.sort(i))) for i in self.src.sorts},
        )

    @staticmethod
    def identity(u: UOrd) -> "MonotoneMap":
        return MonotoneMap(
            u, u, {i: i for i in u.sorts}, {i: FinFun.identity(u.carrier(i)) for i in u.sorts}
        )


def is_monotone(f: MonotoneMap) -> bool:
    """Every base relation's image lands under a base relation of the target."""
    for (i, j), rels in f.src.base.items():
        for r in rels:
            img = image_relation(f.fun(i), f.fun(j), r)
            if not in_downclosure(img, f.dst, f.sort(i), f.sort(j)):
                return False
    return True


def monotone_witness(f: MonotoneMap) -> tuple[tuple[Sort, Sort], int] | None:
    """Least (sort pair, base index) whose image is uncovered, or None."""
    for (i, j) in sorted(f.src.base, key=repr):
        for n, r in enumerate(f.src.base[(i, j)]):
            img = image_relation(f.fun(i), f.fun(j), r)
            if not in_downclosure(img, f.dst, f.sort(i), f.sort(j)):
                return (i, j), n
    return None


def map_leq(f: MonotoneMap, g: MonotoneMap) -> bool:
    """2-cell order: per sort, the graph {(f a, g a)} is covered in the
    target."""
    if f.src is not g.src and f.src != g.src:
        raise RelError("maps have different sources")
    for i in f.src.sorts:
        pairs = [(f(i, a), g(i, a)) for a in f.src.carrier(i)]
        rel = Rel.from_pairs(f.dst.carrier(f.sort(i)), f.dst.carrier(g.sort(i)), pairs)
        if not in_downclosure(rel, f.dst, f.sort(i), g.sort(i)):
            return False
    return True


def map_equiv(f: MonotoneMap, g: MonotoneMap) -> bool:
    return map_leq(f, g) and map_leq(g, f)


# --- products, coproducts, opposite ---------------------------------------


def product(factors: Sequence[UOrd], name: str | None = None) -> UOrd:
    """Product: tupled sorts and carriers; base relations are componentwise
    conjunctions of base choices."""
    name = name or "(" + "*".join(u.name for u in factors) + ")"
    sorts = tuple(itertools.product(*(u.sorts for u in factors)))
    carriers = {
        stup: tuple_finset([u.carrier(s) for u, s in zip(factors, stup)])
        for stup in sorts
    }
    base: dict[tuple[Sort, Sort], tuple[Rel, ...]] = {}
    for itup in sorts:
        for jtup in sorts:
            choices = [u.base_at(s, t) for u, s, t in zip(factors, itup, jtup)]
            rels = []
            for combo in itertools.product(*choices):
                src, dst = carriers[itup], carriers[jtup]
                pairs = [
                    (a, b)
                    for a in src.elements
                    for b in dst.elements
                    if all(r.holds(x, y) for r, x, y in zip(combo, a, b))
                ]
                rels.append(Rel.from_pairs(src, dst, pairs))
            if rels:
                base[(itup, jtup)] = tuple(rels)
    return UOrd(name, sorts, carriers, base)


def coproduct(factors: Sequence[UOrd], name: str | None = None) -> UOrd:
    """Coproduct: disjoint sorts, cross bases empty."""
    name = name or "(" + "+".join(u.name for u in factors) + ")"
    sorts = tuple((n, s) for n, u in enumerate(factors) for s in u.sorts)
    carriers = {(n, s): factors[n].carrier(s) for n, s in sorts}
    base = {
        ((n, i), (n, j)): rels
        for n, u in enumerate(factors)
        for (i, j), rels in u.base.items()
    }
    return UOrd(name, sorts, carriers, base)


def oppose(u: UOrd) -> UOrd:
    """Fiberwise opposite: transpose every base relation and swap indices."""
    base = {(j, i): tuple(opposite(r) for r in rels) for (i, j), rels in u.base.items()}
    return UOrd(f"{u.name}^op", u.sorts, dict(u.carriers), base)


def one_point(name: str = "point") -> UOrd:
    a = fs("pt", ["*"])
    return UOrd(name, ("*",), {"*": a}, {("*", "*"): (Rel.identity(a),)})


# --- reconstruction from a fibered preorder --------------------------------

EntailmentOracle = Callable[[Predicate, Predicate], bool]


def reconstruct_from_fiber(
    carriers: dict[Sort, FinSet],
    oracle: EntailmentOracle,
    name: str = "reconstructed",
) -> UOrd:
    """Recover a base from an entailment oracle on the given carriers.

    A relation passes if, indexed by its own pairs, the left projection
    predicate entails the right one.  Candidates are built from the passing
    atomic pairs and refined by the two-element compatibility test; the full
    power set of each product is never enumerated.
    """
    sorts = tuple(carriers)

    def point(i: Sort, a: Element) -> Predicate:
        m = fs("pt", [0])
        return Predicate(m, i, FinFun.constant(m, carriers[i], a))

    for i in sorts:
        gen = Predicate(carriers[i], i, FinFun.identity(carriers[i]))
        if not oracle(gen, gen):
            raise RelError(f"oracle is not reflexive at sort {i!r}")

    def passes(i: Sort, j: Sort, pairs: tuple[tuple[Element, Element], ...]) -> bool:
        if not pairs:
            return True
        m = fs("r", list(range(len(pairs))))
        left = Predicate(m, i, FinFun(m, carriers[i], tuple(carriers[i].index(a) for a, _ in pairs)))
        right = Predicate(m, j, FinFun(m, carriers[j], tuple(carriers[j].index(b) for _, b in pairs)))
        return oracle(left, right)

    base: dict[tuple[Sort, Sort], tuple[Rel, ...]] = {}
    for i in sorts:
        for j in sorts:
            atoms = [
                (a, b)
                for a in carriers[i].elements
                for b in carriers[j].elements
                if oracle(point(i, a), point(j, b))
            ]
            if not atoms:
                continue
            if passes(i, j, tuple(atoms)):
                base[(i, j)] = (Rel.from_pairs(carriers[i], carriers[j], atoms),)
                continue
            compatible = {
                (p, q)
                for p in atoms
                for q in atoms
                if passes(i, j, (p, q)) and passes(i, j, (q, p))
            }
            cliques = _maximal_cliques(atoms, compatible)
            rels = []
            for clique in cliques:
                current = list(clique)
                while current and not passes(i, j, tuple(current)):
                    current.pop()  # drop lex-greatest until the oracle accepts
                if current:
                    rels.append(Rel.from_pairs(carriers[i], carriers[j], current))
            kept = []
            for n, r in enumerate(rels):
                if not any(m != n and contained(r, s) for m, s in enumerate(rels)):
                    if r not in kept:
                        kept.append(r)
            if kept:
                base[(i, j)] = tuple(kept)
    u = UOrd(name, sorts, dict(carriers), base)
    report = validate_base(u)
    if not report.ok:
        raise RelError("reconstructed base fails the base axioms")
    return u


def _maximal_cliques(
    vertices: list, edges: set[tuple[Any, Any]]
) -> list[tuple[Any, ...]]:
    """Bron-Kerbosch without pivoting; output sorted for determinism."""
    order = {v: n for n, v in enumerate(vertices)}
    adj = {
        v: {w for w in vertices if w != v and ((v, w) in edges and (w, v) in edges)}
        for v in vertices
    }
    out: list[tuple] = []

    def expand(r: set, p: set, x: set) -> None:
        if not p and not x:
            out.append(tuple(sorted(r, key=lambda v: order[v])))
            return
        for v in sorted(p, key=lambda v: order[v]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(vertices), set())
    return sorted(out)


# --- functionality and modesty ---------------------------------------------


def is_functional_uord(u: UOrd) -> bool:
    return all(r.is_functional() for rels in u.base.values() for r in rels)


@dataclass(frozen=True)
class ModestResult:
    """Three-valued answer; ``counterexample`` is a refuting span when No."""

    verdict: bool | None
    exact: bool = False
    counterexample: Any = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict is True


def check_modest(u: UOrd, p: Predicate, bound: int = 3) -> ModestResult:
    """Bounded modesty check for a predicate.

    Searches spans e : K ->> J, f : K -> M with |K| <= bound for a
    comparison that admits no mediator.  A clean search upgrades to an
    exact Yes when the functional-relation criterion applies (functional
    structure and injective assignment), or vacuously for |M| <= 1.
    """
    m_set = p.M
    if len(m_set) <= 1:
        return ModestResult(True, exact=True, reason="every map into the index factors")

    for ksize in range(2, bound + 1):
        k_set = fs("K", list(range(ksize)))
        for blocks in _partitions(list(range(ksize))):
            j_set = fs("J", list(range(len(blocks))))
            e = FinFun(
                k_set,
                j_set,
                tuple(next(bi for bi, blk in enumerate(blocks) if kk in blk) for kk in range(ksize)),
            )
            for f in all_functions(k_set, m_set):
                if all(len({f.table[kk] for kk in blk}) == 1 for blk in blocks):
                    continue  # f factors through e: a mediator always exists
                fp = p.reindex(f)
                for j_sort in u.sorts:
                    for psi_fun in all_functions(j_set, u.carrier(j_sort)):
                        psi = Predicate(j_set, j_sort, psi_fun)
                        if entails(u, psi.reindex(e), fp):
                            witness = {
                                "K": ksize,
                                "blocks": [sorted(b) for b in blocks],
                                "f": [f(kk) for kk in k_set],
                                "psi_sort": j_sort,
                                "psi": [psi.value(j) for j in j_set],
                            }
                            return ModestResult(False, exact=True, counterexample=witness)

    injective = p.phi.is_injective()
    if injective and is_functional_uord(u):
        return ModestResult(
            True, exact=True, reason="functional structure with injective assignment"
        )
    return ModestResult(None, reason=f"no refuting span with |K| <= {bound}")


def _partitions(items: list) -> Iterator[list[list]]:
    """Set partitions in a deterministic order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for n in range(len(part)):
            yield part[:n] + [[first] + part[n]] + part[n + 1:]
        yield [[first]] + part


# --- condensates and order-generated structures -----------------------------


def condensate(u: UOrd) -> Rel:
    """Union of the reflexive base relations of a one-sorted structure.

    The union is always a preorder; this is verified, not assumed.
    """
    s = u.one_sort()
    car = u.carrier(s)
    acc = Rel.identity(car)
    for r in u.base_at(s, s):
        if r.is_reflexive():
            acc = acc.union(r)
    if not acc.is_transitive():
        raise RelError("reflexive base relations do not union to a preorder")
    return acc


def is_condensable(u: UOrd) -> bool:
    s = u.one_sort()
    return in_downclosure(condensate(u), u, s, s)


@dataclass(frozen=True)
class BcoResult:
    verdict: bool | None
    order: Rel | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict is True


def is_bco(u: UOrd, bound: int = 4) -> BcoResult:
    """Does some preorder in the structure generate it by partially
    functional distributors?

    Exhaustive for carriers up to ``bound`` elements; Unknown beyond.
    """
    s = u.one_sort()
    car = u.carrier(s)
    n = len(car)

    candidates: list[Rel] = []
    try:
        cond = condensate(u)
        if in_downclosure(cond, u, s, s):
            candidates.append(cond)
    except RelError:
        pass
    exhaustive = n <= bound
    if exhaustive:
        for rows in itertools.product(range(1 << n), repeat=n):
            r = Rel(car, car, rows)
            if r.is_reflexive() and r.is_transitive() and in_downclosure(r, u, s, s):
                if r not in candidates:
                    candidates.append(r)

    for order in candidates:
        if _order_generates(u, s, order):
            return BcoResult(True, order=order)
    if exhaustive:
        return BcoResult(False, reason="no preorder in the structure generates it")
    return BcoResult(None, reason=f"carrier exceeds exhaustive bound {bound}")


def _order_generates(u: UOrd, s: Sort, order: Rel) -> bool:
    """Every base relation is covered by a partially functional
    order-distributor that stays inside the structure."""
    car = u.carrier(s)
    n = len(car)
    for r in u.base_at(s, s):
        found = False
        for assignment in itertools.product(range(n + 1), repeat=n):
            # assignment[a] = n means 'undefined at a'
            dom = [a for a in range(n) if assignment[a] < n]
            if not _dom_down_closed(dom, order, car):
                continue
            if not _partial_monotone(assignment, order, car):
                continue
            rows = tuple(
                order.rows[assignment[a]] if assignment[a] < n else 0 for a in range(n)
            )
            phi = Rel(car, car, rows)
            if contained(r, phi) and in_downclosure(phi, u, s, s):
                found = True
                break
        if not found:
            return False
    return True


def _dom_down_closed(dom: list[int], order: Rel, car: FinSet) -> bool:
    dset = set(dom)
    for a in dom:
        for b in range(len(car)):
            if order.rows[b] >> a & 1 and b not in dset:  # b <= a but b not in dom
                return False
    return True


def _partial_monotone(assignment: tuple[int, ...], order: Rel, car: FinSet) -> bool:
    n = len(car)
    for a in range(n):
        if assignment[a] == n:
            continue
        for b in range(n):
            if assignment[b] == n:
                continue
            if order.rows[a] >> b & 1:  # a <= b
                if not order.rows[assignment[a]] >> assignment[b] & 1:
                    return False
    return True
