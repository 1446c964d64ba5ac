"""Decidable logic fibers: the seam between the quantifier machinery and
the category constructions.

A fiber exposes predicates over finite index sets with entailment, top,
binary meet, existential quantification along any map, and reindexing;
implication, universal quantification, bottom, and a generic predicate are
optional.  Two reference implementations ship: a pointwise fiber over a
finite Heyting algebra and the powerset fiber over a finitely complete
uniform structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Protocol

from ..meets import MeetData
from ..relcore import Element, FinFun, FinSet, Rel, RelError, fs
from ..uord import Predicate, Sort, UOrd, all_predicates, entails
from .connectives import ImpliesData, UAlgebraData, forall_along, implies_on
from .dpred import bottom_dpredicate, dexists, dpredicate, top_dpredicate, y_image
from .power import PowerUOrd, build_D
from .sections import d_meet, delta_subset, gamma_d, pi_support


class LogicFiber(Protocol):
    """What the categorical constructions need from a logic."""

    name: str

    def predicates_on(self, M: FinSet) -> Iterator[Any]: ...

    def top(self, M: FinSet) -> Any: ...

    def meet(self, p: Any, q: Any) -> Any: ...

    def entails(self, p: Any, q: Any) -> bool: ...

    def reindex(self, p: Any, h: FinFun) -> Any: ...

    def exists_along(self, p: Any, h: FinFun) -> Any: ...

    # optional structure; raise FiberCapabilityError when absent
    def bottom(self, M: FinSet) -> Any: ...

    def implies(self, p: Any, q: Any) -> Any: ...

    def forall_along(self, p: Any, h: FinFun) -> Any: ...

    def delta(self, M: FinSet, subset: frozenset) -> Any: ...

    def gamma(self, p: Any) -> frozenset: ...

    def pi(self, p: Any) -> frozenset: ...

    def index_set(self, p: Any) -> FinSet: ...


class FiberCapabilityError(RuntimeError):
    """The fiber does not model the requested connective."""


def fiber_equiv(fiber: LogicFiber, p: Any, q: Any) -> bool:
    return fiber.entails(p, q) and fiber.entails(q, p)


# --- finite Heyting algebras -------------------------------------------------


@dataclass(frozen=True)
class Heyting:
    """A finite Heyting algebra presented by its order."""

    carrier: FinSet
    leq: Rel
    top: Element
    bottom: Element

    def __post_init__(self) -> None:
        if not (self.leq.is_reflexive() and self.leq.is_transitive()):
            raise RelError("order must be a preorder")

    def le(self, a: Element, b: Element) -> bool:
        return self.leq.holds(a, b)

    def meet(self, a: Element, b: Element) -> Element:
        lower = [c for c in self.carrier if self.le(c, a) and self.le(c, b)]
        for c in lower:
            if all(self.le(d, c) for d in lower):
                return c
        raise RelError(f"no meet of {a!r}, {b!r}")

    def join(self, a: Element, b: Element) -> Element:
        upper = [c for c in self.carrier if self.le(a, c) and self.le(b, c)]
        for c in upper:
            if all(self.le(c, d) for d in upper):
                return c
        raise RelError(f"no join of {a!r}, {b!r}")

    def implies(self, a: Element, b: Element) -> Element:
        good = [c for c in self.carrier if self.le(self.meet(c, a), b)]
        for c in good:
            if all(self.le(d, c) for d in good):
                return c
        raise RelError(f"no relative pseudocomplement of {a!r}, {b!r}")

    def join_all(self, xs) -> Element:
        out = self.bottom
        for x in xs:
            out = self.join(out, x)
        return out

    def meet_all(self, xs) -> Element:
        out = self.top
        for x in xs:
            out = self.meet(out, x)
        return out


def chain_heyting(n: int) -> Heyting:
    car = fs(f"H{n}", list(range(n)))
    leq = Rel.from_pairs(car, car, [(a, b) for a in range(n) for b in range(n) if a <= b])
    return Heyting(car, leq, n - 1, 0)


def boolean_heyting() -> Heyting:
    return chain_heyting(2)


def diamond_heyting() -> Heyting:
    car = fs("Hd", ["0", "a", "b", "1"])
    le = {("0", x) for x in car} | {(x, "1") for x in car} | {(x, x) for x in car}
    return Heyting(car, Rel.from_pairs(car, car, sorted(le)), "1", "0")


@dataclass(frozen=True)
class HPred:
    """A pointwise Heyting-valued predicate."""

    M: FinSet
    values: tuple[Element, ...]

    def value(self, m: Element) -> Element:
        return self.values[self.M.index(m)]


@dataclass
class HeytingFiber:
    """Pointwise order over a finite Heyting algebra; joins interpret the
    existential, meets the universal."""

    H: Heyting
    name: str = "heyting"

    def predicates_on(self, M: FinSet) -> Iterator[HPred]:
        for values in itertools.product(self.H.carrier.elements, repeat=len(M)):
            yield HPred(M, values)

    def index_set(self, p: HPred) -> FinSet:
        return p.M

    def top(self, M: FinSet) -> HPred:
        return HPred(M, (self.H.top,) * len(M))

    def bottom(self, M: FinSet) -> HPred:
        return HPred(M, (self.H.bottom,) * len(M))

    def meet(self, p: HPred, q: HPred) -> HPred:
        return HPred(p.M, tuple(self.H.meet(a, b) for a, b in zip(p.values, q.values)))

    def implies(self, p: HPred, q: HPred) -> HPred:
        return HPred(p.M, tuple(self.H.implies(a, b) for a, b in zip(p.values, q.values)))

    def entails(self, p: HPred, q: HPred) -> bool:
        return all(self.H.le(a, b) for a, b in zip(p.values, q.values))

    def reindex(self, p: HPred, h: FinFun) -> HPred:
        return HPred(h.src, tuple(p.value(h(m)) for m in h.src.elements))

    def exists_along(self, p: HPred, h: FinFun) -> HPred:
        return HPred(
            h.dst,
            tuple(
                self.H.join_all(p.value(m) for m in p.M.elements if h(m) == n)
                for n in h.dst.elements
            ),
        )

    def forall_along(self, p: HPred, h: FinFun) -> HPred:
        return HPred(
            h.dst,
            tuple(
                self.H.meet_all(p.value(m) for m in p.M.elements if h(m) == n)
                for n in h.dst.elements
            ),
        )

    def delta(self, M: FinSet, subset: frozenset) -> HPred:
        return HPred(
            M, tuple(self.H.top if m in subset else self.H.bottom for m in M.elements)
        )

    def gamma(self, p: HPred) -> frozenset:
        return frozenset(m for m in p.M.elements if p.value(m) == self.H.top)

    def pi(self, p: HPred) -> frozenset:
        return frozenset(m for m in p.M.elements if p.value(m) != self.H.bottom)


# --- the powerset fiber ------------------------------------------------------


@dataclass
class DFiber:
    """Predicates valued in powerset carriers over a finitely complete
    source.  Implication and universal quantification are pluggable: attach
    them from lifted source data or from a synthesized application
    relation."""

    source: UOrd
    meets: MeetData
    du: PowerUOrd = None  # type: ignore[assignment]
    name: str = "D"
    implies_op: Callable[[Predicate, Predicate], Predicate] | None = None
    forall_op: Callable[[Predicate, FinFun], Predicate] | None = None

    def __post_init__(self) -> None:
        if self.du is None:
            self.du = build_D(self.source)

    def attach_lifted(self, alg: UAlgebraData, imp: ImpliesData) -> "DFiber":
        self.forall_op = lambda p, h: forall_along(self.du, alg, p, h)
        self.implies_op = lambda p, q: implies_on(self.du, alg, imp, p, q)
        return self

    def predicates_on(self, M: FinSet) -> Iterator[Predicate]:
        yield from all_predicates(self.du, M)

    def index_set(self, p: Predicate) -> FinSet:
        return p.M

    def top(self, M: FinSet) -> Predicate:
        return top_dpredicate(self.du, self.meets, M)

    def bottom(self, M: FinSet) -> Predicate:
        return bottom_dpredicate(self.du, M, self.meets.unit)

    def meet(self, p: Predicate, q: Predicate) -> Predicate:
        return d_meet(self.du, self.meets, p, q)

    def entails(self, p: Predicate, q: Predicate) -> bool:
        return entails(self.du, p, q)

    def reindex(self, p: Predicate, h: FinFun) -> Predicate:
        return p.reindex(h)

    def exists_along(self, p: Predicate, h: FinFun) -> Predicate:
        return dexists(self.du, p, h)

    def implies(self, p: Predicate, q: Predicate) -> Predicate:
        if self.implies_op is None:
            raise FiberCapabilityError("no implication attached to this fiber")
        return self.implies_op(p, q)

    def forall_along(self, p: Predicate, h: FinFun) -> Predicate:
        if self.forall_op is None:
            raise FiberCapabilityError("no universal quantification attached")
        return self.forall_op(p, h)

    def delta(self, M: FinSet, subset: frozenset) -> Predicate:
        return delta_subset(self.du, self.meets, M, subset)

    def gamma(self, p: Predicate) -> frozenset:
        return gamma_d(self.du, self.meets, p)

    def pi(self, p: Predicate) -> frozenset:
        return pi_support(p)

    def generic(self, i: Sort | None = None) -> Predicate:
        """The singleton-valued predicate on a carrier."""
        src = self.source
        i = src.sorts[0] if i is None else i
        car = src.carrier(i)
        return y_image(self.du, Predicate(car, i, FinFun.identity(car)))
