"""Typed pca data and bounded verification of its axioms.

Carriers may be finite (checked exhaustively) or countable (checked on a
prefix of the stable enumeration).  Failures are data, not errors: every
axiom gets a report entry with a counterexample when refuted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from ..reports import Report, ReportSet, failed, passed, unknown
from .core import Budget, Defined, EffectivePca, Outcome


@dataclass
class TypedPcaData:
    """Sorted applicative structure with combinators.

    ``apply(i, j, a, b, fuel)`` applies ``a`` in A_{i=>j} to ``b`` in A_i.
    ``carriers[i]`` is either a finite tuple of elements or a callable
    returning a restartable iterator (countable case).
    ``combinators`` maps names to sort-indexed elements:
    k[i,j], s[i,j,l], pair[i,j], fst[i,j], snd[i,j].
    """

    sorts: tuple[Any, ...]
    star: Callable[[Any, Any], Any]
    arrow: Callable[[Any, Any], Any]
    carriers: dict[Any, Any]
    apply: Callable[..., Outcome]
    k: dict[tuple, Any] = field(default_factory=dict)
    s: dict[tuple, Any] = field(default_factory=dict)
    pair: dict[tuple, Any] = field(default_factory=dict)
    fst: dict[tuple, Any] = field(default_factory=dict)
    snd: dict[tuple, Any] = field(default_factory=dict)

    def elements(self, sort: Any, limit: int) -> list[Any]:
        car = self.carriers[sort]
        if callable(car):
            return list(itertools.islice(car(), limit))
        return list(car)[:limit]

    def is_finite(self, sort: Any) -> bool:
        return not callable(self.carriers[sort])


def one_sorted(
    pca: EffectivePca,
    pair: Any = None,
    fst: Any = None,
    snd: Any = None,
) -> TypedPcaData:
    """Wrap an effective pca as one-sorted typed data (sort ``0``)."""

    def apply(i: Any, j: Any, a: Any, b: Any, fuel: int) -> Outcome:
        return pca.apply(a, b, fuel)

    d = TypedPcaData(
        sorts=(0,),
        star=lambda i, j: 0,
        arrow=lambda i, j: 0,
        carriers={0: pca.enumerate_elements},
        apply=apply,
    )
    d.k[(0, 0)] = pca.k
    d.s[(0, 0, 0)] = pca.s
    if pair is not None:
        d.pair[(0, 0)] = pair
        d.fst[(0, 0)] = fst
        d.snd[(0, 0)] = snd
    return d


def _apply2(d: TypedPcaData, i, j, l, f, x, y, fuel) -> Outcome:
    """f : i => j => l applied to x : i, y : j."""
    out = d.apply(i, d.arrow(j, l), f, x, fuel)
    if not isinstance(out, Defined):
        return out
    return d.apply(j, l, out.value, y, fuel)


def check_typed_pca(d: TypedPcaData, samples: int = 25, fuel: int = 10_000) -> ReportSet:
    """Verify the typed combinator axioms.

    Exhaustive over finite carriers, else over ``samples`` enumerated
    elements per sort.  Budget exhaustion yields unknown, not failure.
    """
    rs = ReportSet()
    for (i, j), k_el in sorted(d.k.items(), key=repr):
        rs.add(_law_kxy(d, i, j, k_el, samples, fuel))
    for (i, j, l), s_el in sorted(d.s.items(), key=repr):
        rs.extend(_laws_s(d, i, j, l, s_el, samples, fuel))
    for (i, j), p_el in sorted(d.pair.items(), key=repr):
        rs.extend(_laws_pairing(d, i, j, p_el, d.fst[(i, j)], d.snd[(i, j)], samples, fuel))
    if not rs.reports:
        rs.add(unknown("typed-pca", "combinators", "no combinator data supplied"))
    return rs


def _law_kxy(d: TypedPcaData, i, j, k_el, samples, fuel) -> Report:
    check = f"typed-pca.k[{i},{j}]"
    xs = d.elements(i, samples)
    ys = d.elements(j, samples)
    saw_budget = False
    for x in xs:
        for y in ys:
            out = _apply2(d, i, j, i, k_el, x, y, fuel)
            if isinstance(out, Budget):
                saw_budget = True
                continue
            if out.value != x:
                return failed(check, "k-axiom", {"x": x, "y": y, "got": out.value})
    if saw_budget:
        return unknown(check, "k-axiom", "budget exhausted on some pairs")
    return passed(check, "k-axiom", f"{len(xs) * len(ys)} pairs")


def _laws_s(d: TypedPcaData, i, j, l, s_el, samples, fuel) -> ReportSet:
    rs = ReportSet()
    check = f"typed-pca.s[{i},{j},{l}]"
    ij, il = d.arrow(i, j), d.arrow(i, l)
    ijl = d.arrow(i, d.arrow(j, l))
    xs = d.elements(ijl, samples)
    ys = d.elements(ij, samples)
    zs = d.elements(i, samples)
    def_unknowns = 0
    ge_unknowns = 0
    for x in xs:
        for y in ys:
            # s x y must be defined
            out = _apply2(d, ijl, ij, il, s_el, x, y, fuel)
            if isinstance(out, Budget):
                def_unknowns += 1
                continue
            sxy = out.value
            for z in zs:
                lhs = d.apply(i, l, sxy, z, fuel)
                # rhs = x z (y z)
                xz = d.apply(i, d.arrow(j, l), x, z, fuel)
                yz = d.apply(i, j, y, z, fuel)
                if not (isinstance(xz, Defined) and isinstance(yz, Defined)):
                    continue  # rhs not (yet) defined: inequality holds vacuously
                rhs = d.apply(j, l, xz.value, yz.value, fuel)
                if not isinstance(rhs, Defined):
                    continue
                if isinstance(lhs, Budget):
                    ge_unknowns += 1
                    continue
                if lhs.value != rhs.value:
                    rs.add(
                        failed(
                            check,
                            "s-axiom",
                            {"x": x, "y": y, "z": z, "lhs": lhs.value, "rhs": rhs.value},
                        )
                    )
                    return rs
    if def_unknowns:
        rs.add(unknown(check, "s-definedness", f"{def_unknowns} pairs hit the budget"))
    else:
        rs.add(passed(check, "s-definedness", f"{len(xs) * len(ys)} pairs"))
    if ge_unknowns:
        rs.add(unknown(check, "s-axiom", f"{ge_unknowns} triples hit the budget"))
    else:
        rs.add(passed(check, "s-axiom", f"{len(xs) * len(ys) * len(zs)} triples"))
    return rs


def _laws_pairing(d: TypedPcaData, i, j, pair_el, fst_el, snd_el, samples, fuel) -> ReportSet:
    rs = ReportSet()
    check = f"typed-pca.pair[{i},{j}]"
    ij = d.star(i, j)
    xs = d.elements(i, samples)
    ys = d.elements(j, samples)
    unknowns = 0
    for x in xs:
        for y in ys:
            out = _apply2(d, i, j, ij, pair_el, x, y, fuel)
            if isinstance(out, Budget):
                unknowns += 1
                continue
            pxy = out.value
            f = d.apply(ij, i, fst_el, pxy, fuel)
            s = d.apply(ij, j, snd_el, pxy, fuel)
            if isinstance(f, Budget) or isinstance(s, Budget):
                unknowns += 1
                continue
            if f.value != x:
                rs.add(failed(check, "fst-pair", {"x": x, "y": y, "got": f.value}))
                return rs
            if s.value != y:
                rs.add(failed(check, "snd-pair", {"x": x, "y": y, "got": s.value}))
                return rs
    if unknowns:
        rs.add(unknown(check, "pairing-laws", f"{unknowns} pairs hit the budget"))
    else:
        rs.add(passed(check, "pairing-laws", f"{len(xs) * len(ys)} pairs"))
    return rs


@dataclass
class SubPcaData:
    """A subfamily of a typed pca given by a membership predicate."""

    parent: TypedPcaData
    member: Callable[[Any, Any], bool]  # (sort, element) -> bool

    def members(self, sort: Any, limit: int) -> list[Any]:
        return [a for a in self.parent.elements(sort, limit) if self.member(sort, a)]


def check_sub_pca(s: SubPcaData, samples: int = 25, fuel: int = 10_000) -> ReportSet:
    """Closure under defined application, and combinator membership."""
    rs = ReportSet()
    d = s.parent
    unknowns = 0
    checked = 0
    for i in d.sorts:
        for j in d.sorts:
            funs = s.members(d.arrow(i, j), samples)
            args = s.members(i, samples)
            for f in funs:
                for a in args:
                    out = d.apply(i, j, f, a, fuel)
                    if isinstance(out, Budget):
                        unknowns += 1
                        continue
                    checked += 1
                    if not s.member(j, out.value):
                        rs.add(
                            failed(
                                "sub-pca.closure",
                                "application-closure",
                                {"fun": f, "arg": a, "value": out.value, "sort": j},
                            )
                        )
                        return rs
    if unknowns:
        rs.add(unknown("sub-pca.closure", "application-closure", f"{unknowns} budget hits"))
    else:
        rs.add(passed("sub-pca.closure", "application-closure", f"{checked} applications"))

    for name, table, sort_of in (
        ("k", d.k, lambda key: d.arrow(key[0], d.arrow(key[1], key[0]))),
        (
            "s",
            d.s,
            lambda key: d.arrow(
                d.arrow(key[0], d.arrow(key[1], key[2])),
                d.arrow(d.arrow(key[0], key[1]), d.arrow(key[0], key[2])),
            ),
        ),
        ("pair", d.pair, lambda key: d.arrow(key[0], d.arrow(key[1], d.star(*key)))),
        ("fst", d.fst, lambda key: d.arrow(d.star(*key), key[0])),
        ("snd", d.snd, lambda key: d.arrow(d.star(*key), key[1])),
    ):
        for key, el in sorted(table.items(), key=repr):
            if not s.member(sort_of(key), el):
                rs.add(failed("sub-pca.combinators", "combinator-membership", {name: key}))
                return rs
    rs.add(passed("sub-pca.combinators", "combinator-membership"))
    return rs
