"""The quantification monads on uniform structures.

D takes powerset carriers with the simulation bracket [r] (every member of
the left set reaches the right set); D+ restricts to nonempty subsets; U is
the dual bracket.  D is a KZ 2-monad: unit = indexwise singleton,
multiplication = union, and the multiplication is left adjoint to the unit
on the powerset level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from ..relcore import Element, FinFun, FinSet, Rel, RelError, contained
from ..reports import Report, ReportSet, failed, passed, unknown
from ..uord import MonotoneMap, Sort, UOrd, in_downclosure, map_equiv

SIZE_LIMIT = 12  # soft cap on |A_i| before powersets get out of hand


def powerset_finset(a: FinSet, nonempty: bool = False) -> FinSet:
    """Powerset ordered by (size, index-lexicographic); deterministic."""
    elems = []
    for size in range(1 if nonempty else 0, len(a) + 1):
        for combo in itertools.combinations(range(len(a)), size):
            elems.append(frozenset(a.elements[i] for i in combo))
    prefix = "P+" if nonempty else "P"
    return FinSet(f"{prefix}({a.name})", tuple(elems))


def bracket_holds(r: Rel, m: frozenset, n: frozenset) -> bool:
    """[r](M, N): every element of M is r-related to something in N."""
    return all(any(r.holds(x, y) for y in n) for x in m)


def cobracket_holds(r: Rel, m: frozenset, n: frozenset) -> bool:
    """(r)(M, N): every element of N is r-reached from something in M."""
    return all(any(r.holds(x, y) for x in m) for y in n)


def bracket(r: Rel, psrc: FinSet, pdst: FinSet, dual: bool = False) -> Rel:
    test = cobracket_holds if dual else bracket_holds
    return Rel.from_pairs(
        psrc,
        pdst,
        ((m, n) for m in psrc.elements for n in pdst.elements if test(r, m, n)),
    )


@dataclass(frozen=True)
class PowerUOrd(UOrd):
    """A powerset structure remembering what it was built from."""

    source: UOrd = None  # type: ignore[assignment]
    kind: str = "D"


def _build(u: UOrd, kind: str, limit: int) -> PowerUOrd:
    over = [i for i in u.sorts if len(u.carrier(i)) > limit]
    if over:
        raise RelError(
            f"carrier too large for powerset construction (sorts {over!r}, limit {limit})"
        )
    nonempty = kind == "D+"
    dual = kind == "U"
    carriers = {i: powerset_finset(u.carrier(i), nonempty) for i in u.sorts}
    base = {}
    for (i, j), rels in u.base.items():
        brs: list[Rel] = []
        for r in rels:
            br = bracket(r, carriers[i], carriers[j], dual)
            if br not in brs:
                brs.append(br)
        base[(i, j)] = tuple(brs)
    du = PowerUOrd(f"{kind}({u.name})", u.sorts, carriers, base, source=u, kind=kind)
    if max(len(c) for c in carriers.values()) <= 64:
        from ..uord import validate_base

        assert validate_base(du).all_pass, "bracket base lost the base axioms"
    return du


def build_D(u: UOrd, limit: int = SIZE_LIMIT) -> PowerUOrd:
    return _build(u, "D", limit)


def build_Dplus(u: UOrd, limit: int = SIZE_LIMIT) -> PowerUOrd:
    return _build(u, "D+", limit)


def build_U(u: UOrd, limit: int = SIZE_LIMIT) -> PowerUOrd:
    return _build(u, "U", limit)


def eta_map(u: UOrd, du: PowerUOrd) -> MonotoneMap:
    """Indexwise singleton A -> DA."""
    return MonotoneMap(
        u,
        du,
        {i: i for i in u.sorts},
        {
            i: FinFun.from_map(u.carrier(i), du.carrier(i), lambda a: frozenset([a]))
            for i in u.sorts
        },
    )


def mu_fun(x: frozenset) -> frozenset:
    out: frozenset = frozenset()
    for m in x:
        out = out | m
    return out


def mu_map(ddu: PowerUOrd, du: PowerUOrd) -> MonotoneMap:
    """Indexwise union DDA -> DA."""
    return MonotoneMap(
        ddu,
        du,
        {i: i for i in ddu.sorts},
        {
            i: FinFun.from_map(ddu.carrier(i), du.carrier(i), mu_fun)
            for i in ddu.sorts
        },
    )


def d_of_map(f: MonotoneMap, dsrc: PowerUOrd, ddst: PowerUOrd) -> MonotoneMap:
    """Direct image D(f) : DA -> DB of a monotone map."""
    return MonotoneMap(
        dsrc,
        ddst,
        {i: f.sort(i) for i in f.src.sorts},
        {
            i: FinFun.from_map(
                dsrc.carrier(i),
                ddst.carrier(f.sort(i)),
                lambda m, i=i: frozenset(f(i, a) for a in m),
            )
            for i in f.src.sorts
        },
    )


# --- lazy covering tests (avoid materializing iterated powersets) ----------


def d_covered(u: UOrd, i: Sort, j: Sort, pairs: Iterable[tuple[frozenset, frozenset]]) -> bool:
    """Is a set of powerset pairs uniformly under some bracketed base
    relation at (i, j)?  Works without building the powerset structure."""
    pairs = list(pairs)
    return any(
        all(bracket_holds(r, m, n) for m, n in pairs) for r in u.base_at(i, j)
    )


def dd_covered(u: UOrd, i: Sort, j: Sort, pairs: Iterable[tuple[frozenset, frozenset]]) -> bool:
    """Same one level up: pairs of sets of sets, tested against [[r]]."""
    pairs = list(pairs)
    return any(
        all(
            all(any(bracket_holds(r, m, n) for n in y) for m in x)
            for x, y in pairs
        )
        for r in u.base_at(i, j)
    )


def _subsets_capped(elems: list, cap: int) -> list[frozenset]:
    out = [frozenset()]
    for size in range(1, cap + 1):
        out.extend(frozenset(c) for c in itertools.combinations(elems, size))
    return out


def monad_audit(u: UOrd, exhaustive_limit: int = 3) -> ReportSet:
    """Verify the monad and KZ laws for the powerset construction on u.

    Exhaustive through the double-powerset level when every carrier has at
    most ``exhaustive_limit`` elements; above that, double- and
    triple-powerset elements are drawn from a deterministic capped family
    and the report says so.
    """
    rs = ReportSet()
    du = build_D(u)
    exhaustive = u.max_carrier() <= exhaustive_limit

    eta = eta_map(u, du)
    ok = True
    for (i, j), rels in sorted(u.base.items(), key=repr):
        for r in rels:
            pairs = [(frozenset([a]), frozenset([b])) for a, b in r.pairs()]
            if not d_covered(u, i, j, pairs):
                ok = False
                rs.add(failed("d.monad.unit-monotone", "unit-monotone", {"sorts": [i, j]}))
    if ok:
        rs.add(passed("d.monad.unit-monotone", "unit-monotone"))

    # multiplication is monotone: image of [[r]] under union is covered
    ok = True
    coverage = "exhaustive" if exhaustive else "sampled"
    for (i, j), rels in sorted(u.base.items(), key=repr):
        pa_i = du.carrier(i).elements
        pa_j = du.carrier(j).elements
        if exhaustive:
            xs = _subsets_capped(list(pa_i), len(pa_i))
            ys = _subsets_capped(list(pa_j), len(pa_j))
        else:
            xs = _subsets_capped(list(pa_i), 2)
            ys = _subsets_capped(list(pa_j), 2)
        for r in rels:
            pairs = []
            for x in xs:
                for y in ys:
                    if all(any(bracket_holds(r, m, n) for n in y) for m in x):
                        pairs.append((mu_fun(x), mu_fun(y)))
            if not d_covered(u, i, j, pairs):
                ok = False
                rs.add(
                    failed("d.monad.mult-monotone", "multiplication-monotone", {"sorts": [i, j]})
                )
    if ok:
        rs.add(passed("d.monad.mult-monotone", "multiplication-monotone", coverage))

    # unit laws as strict equalities of maps on DA
    ok = True
    for i in u.sorts:
        for m in du.carrier(i).elements:
            if mu_fun(frozenset([m])) != m:
                ok = False
                rs.add(failed("d.monad.unit-law", "mult-after-unit", {"M": m}))
            if mu_fun(frozenset(frozenset([a]) for a in m)) != m:
                ok = False
                rs.add(failed("d.monad.unit-law", "mult-after-mapped-unit", {"M": m}))
    if ok:
        rs.add(passed("d.monad.unit-law", "unit-laws"))

    # associativity as strict equality, on triple-powerset elements
    ok = True
    for i in u.sorts:
        pa = list(du.carrier(i).elements)
        if exhaustive and len(pa) <= 4:
            dds = _subsets_capped(pa, len(pa))
        else:
            dds = _subsets_capped(pa, 2)
        ddds = _subsets_capped(dds, 2)
        for xxx in ddds:
            lhs = mu_fun(frozenset(mu_fun(xx) for xx in xxx))
            rhs = mu_fun(mu_fun(xxx))
            if lhs != rhs:
                ok = False
                rs.add(failed("d.monad.assoc", "mult-associativity", {"X": xxx}))
    if ok:
        rs.add(
            passed(
                "d.monad.assoc",
                "mult-associativity",
                "exhaustive" if exhaustive and u.max_carrier() <= 2 else "sampled",
            )
        )

    rs.extend(kz_audit(u, du, exhaustive))
    return rs


def kz_audit(u: UOrd, du: PowerUOrd, exhaustive: bool) -> ReportSet:
    """mu is left adjoint to the unit at DA: id <= eta.mu and mu.eta = id."""
    rs = ReportSet()
    ok = True
    for i in u.sorts:
        for m in du.carrier(i).elements:
            if mu_fun(frozenset([m])) != m:
                ok = False
                rs.add(failed("d.kz.counit", "mult-splits-unit", {"M": m}))
    if ok:
        rs.add(passed("d.kz.counit", "mult-splits-unit"))

    ok = True
    for i in u.sorts:
        pa = list(du.carrier(i).elements)
        xs = _subsets_capped(pa, len(pa) if exhaustive else 2)
        pairs = [(x, frozenset([mu_fun(x)])) for x in xs]
        if not dd_covered(u, i, i, pairs):
            ok = False
            rs.add(failed("d.kz.unit", "identity-below-unit-after-mult", {"sort": i}))
    if ok:
        rs.add(
            passed(
                "d.kz.unit",
                "identity-below-unit-after-mult",
                "exhaustive" if exhaustive else "sampled",
            )
        )
    return rs


def kz_unit_holds_for(
    u: UOrd, du: PowerUOrd, structure: FinFun, i: Sort, exhaustive: bool = True
) -> bool:
    """Test the KZ unit inequality for an arbitrary candidate structure map
    on one sort; used to refute corrupted multiplications."""
    pa = list(du.carrier(i).elements)
    xs = _subsets_capped(pa, len(pa) if exhaustive else 2)
    pairs = [(x, frozenset([structure(x)])) for x in xs]
    return dd_covered(u, i, i, pairs)


def algebra_audit(u: UOrd, du: PowerUOrd, structure: MonotoneMap) -> ReportSet:
    """Is a candidate map DA -> A an algebra for the existential monad?

    Checks monotonicity, splitting of the unit, and the adjunction
    structure <= unit (left-adjointness, the KZ property).
    """
    rs = ReportSet()
    from ..uord import monotone_witness

    w = monotone_witness(structure)
    if w is not None:
        rs.add(failed("d.algebra.monotone", "structure-map-monotone", {"at": w}))
    else:
        rs.add(passed("d.algebra.monotone", "structure-map-monotone"))

    ok = True
    for i in u.sorts:
        fwd = Rel.from_pairs(
            u.carrier(structure.sort(i)),
            u.carrier(i),
            ((structure(i, frozenset([a])), a) for a in u.carrier(i).elements),
        )
        bwd = Rel.from_pairs(
            u.carrier(i),
            u.carrier(structure.sort(i)),
            ((a, structure(i, frozenset([a]))) for a in u.carrier(i).elements),
        )
        if not (
            in_downclosure(fwd, u, structure.sort(i), i)
            and in_downclosure(bwd, u, i, structure.sort(i))
        ):
            ok = False
            rs.add(failed("d.algebra.unit-split", "structure-splits-unit", {"sort": i}))
    if ok:
        rs.add(passed("d.algebra.unit-split", "structure-splits-unit"))

    # adjunction unit: id_DA <= eta . structure, uniformly per sort
    ok = True
    for i in u.sorts:
        pairs = [
            (m, frozenset([structure(i, m)])) for m in du.carrier(i).elements
        ]
        if not d_covered(u, i, structure.sort(i), pairs):
            ok = False
            rs.add(failed("d.algebra.adjunction", "identity-below-unit-after-structure", {"sort": i}))
    if ok:
        rs.add(passed("d.algebra.adjunction", "identity-below-unit-after-structure"))
    return rs
