"""The S/K term machine: the effective pca every fuel-bounded check runs on.

Elements are closed applicative terms over the atoms S and K in normal form
(no K with two arguments or S with three anywhere).  Application builds the
application node and reduces it by leftmost-outermost steps under a step
budget.  That strategy is normalizing and deterministic, and combinatory
reduction is confluent, so results are unique and fuel-monotone: more fuel
can only turn Budget into Defined, never change a Defined value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import BUDGET, Defined, EffectivePca, Fuel, Outcome


@dataclass(frozen=True)
class SK:
    """A closed S/K applicative term."""

    __slots__ = ()

    def __call__(self, *args: "SK") -> "SK":
        t: SK = self
        for a in args:
            t = Ap(t, a)
        return t


@dataclass(frozen=True)
class Atom(SK):
    __slots__ = ("tag",)
    tag: str  # "S" or "K"

    def __str__(self) -> str:
        return self.tag


@dataclass(frozen=True)
class Ap(SK):
    __slots__ = ("fun", "arg")
    fun: SK
    arg: SK

    def __str__(self) -> str:
        a = str(self.arg)
        if isinstance(self.arg, Ap):
            a = f"({a})"
        return f"{self.fun} {a}"


S = Atom("S")
K = Atom("K")
I = Ap(Ap(S, K), K)  # S K K


def sk_spine(t: SK) -> tuple[Atom, list[SK]]:
    args: list[SK] = []
    while isinstance(t, Ap):
        args.append(t.arg)
        t = t.fun
    assert isinstance(t, Atom)
    args.reverse()
    return t, args


def _arity(head: Atom) -> int:
    return 2 if head.tag == "K" else 3


def is_normal(t: SK) -> bool:
    head, args = sk_spine(t)
    return len(args) < _arity(head) and all(is_normal(a) for a in args)


def _rebuild(head: SK, args: list[SK]) -> SK:
    for a in args:
        head = Ap(head, a)
    return head


def whnf(t: SK, budget: Fuel) -> Outcome:
    """Weak head reduction only (the first stage of normalization)."""
    while True:
        head, args = sk_spine(t)
        if len(args) < _arity(head):
            return Defined(t)
        if not budget.spend():
            return BUDGET
        if head.tag == "K":
            t = _rebuild(args[0], args[2:])
        else:
            x, y, z = args[0], args[1], args[2]
            t = _rebuild(Ap(Ap(x, z), Ap(y, z)), args[3:])


def normalize(t: SK, budget: Fuel) -> Outcome:
    """Leftmost-outermost reduction to full normal form under a budget."""
    out = whnf(t, budget)
    if not isinstance(out, Defined):
        return out
    head, args = sk_spine(out.value)
    norm_args: list[SK] = []
    for a in args:
        sub = normalize(a, budget)
        if not isinstance(sub, Defined):
            return sub
        norm_args.append(sub.value)
    return Defined(_rebuild(head, norm_args))


def _apply(a: SK, b: SK, budget: Fuel) -> Outcome:
    return normalize(Ap(a, b), budget)


def _closed_terms(size: int, cache: dict[int, list[SK]]) -> list[SK]:
    if size in cache:
        return cache[size]
    if size == 1:
        out: list[SK] = [K, S]
    else:
        out = [
            Ap(f, x)
            for i in range(1, size)
            for f in _closed_terms(i, cache)
            for x in _closed_terms(size - i, cache)
        ]
    cache[size] = out
    return out


def enumerate_normal() -> Iterator[SK]:
    """Stable size-ordered stream of all carrier elements."""
    cache: dict[int, list[SK]] = {}
    for size in itertools.count(1):
        for t in _closed_terms(size, cache):
            if is_normal(t):
                yield t


def sk_pca() -> EffectivePca:
    """The S/K machine packaged as an effective pca."""
    return EffectivePca(
        name="sk",
        apply_fuel=_apply,
        enumerate_elements=enumerate_normal,
        k=K,
        s=S,
    )


def divergent() -> SK:
    """(S I I)(S I I): reduction of this application never terminates."""
    sii = Ap(Ap(S, I), I)
    return Ap(sii, sii)
