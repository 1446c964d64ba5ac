"""Applicative morphisms between pcas, and their reading as finite-meet
preserving monotone maps into the downset side of the target.

Both directions synthesize their certificates from the other side's data by
functional completeness, then verify them by bounded evaluation on sampled
inputs.  A refutation on a sample is reported with the witness; budget
exhaustion is reported as unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from ..reports import ReportSet, failed, passed, unknown
from .abstraction import Pairing, bracket_abstract_many, derive_pairing
from .core import Budget, Defined, EffectivePca, eval_term
from .terms import Const, Term, Var


@dataclass
class ApplicativeMorphism:
    """A total relation between pcas given by a sampling procedure.

    ``gamma(a)`` returns a finite, nonempty tuple of target elements standing
    for the image of ``a``; the realizer ``e`` must satisfy
    b in gamma(a), b' in gamma(a'), a a' defined  =>  e b b' in gamma(a a').
    """

    source: EffectivePca
    target: EffectivePca
    gamma: Callable[[Any], tuple]
    realizer: Any


@dataclass
class MeetMapDescription:
    """A finite-meet preserving monotone map into downsets of the target.

    ``values(a)`` is the image set; ``mono_realizer(r)`` returns, for a
    source element r read as the partial map (r . -), a target element
    tracking the image of that map; ``meet_realizer`` tracks binary meets
    (which are pairings on both sides).
    """

    source: EffectivePca
    target: EffectivePca
    values: Callable[[Any], tuple]
    mono_realizer: Callable[[Any], Any]
    meet_realizer: Any
    source_pairing: Pairing
    target_pairing: Pairing


def identity_morphism(pca: EffectivePca, fuel: int = 10_000) -> ApplicativeMorphism:
    """gamma = singleton images, realizer = \\*x y. x y."""
    x, y = Var("x"), Var("y")
    t = bracket_abstract_many(["x", "y"], x(y), k=Const(pca.k), s=Const(pca.s))
    e = eval_term(pca, t, fuel)
    if not isinstance(e, Defined):
        raise RuntimeError("fuel exhausted building identity realizer")
    return ApplicativeMorphism(pca, pca, lambda a: (a,), e.value)


def applicative_to_meetmap(
    gamma: ApplicativeMorphism,
    samples: int = 12,
    fuel: int = 10_000,
) -> tuple[MeetMapDescription, ReportSet]:
    """Package an applicative morphism as a meet-preserving monotone map.

    The monotonicity certificate at r is e.s0 for s0 the first sample of
    gamma(r); the meet certificate is \\*z. e (e q (fst z)) (snd z) for q the
    first sample of gamma(source pair combinator).
    """
    A, B = gamma.source, gamma.target
    pa = derive_pairing(A, fuel)
    pb = derive_pairing(B, fuel)
    e = gamma.realizer

    def mono_realizer(r: Any) -> Any:
        s0 = gamma.gamma(r)[0]
        out = B.apply(e, s0, fuel)
        if not isinstance(out, Defined):
            raise RuntimeError("budget exhausted building monotonicity certificate")
        return out.value

    q = gamma.gamma(pa.pair)[0]
    z = Var("z")
    ec, qc = Const(e), Const(q)
    fstc, sndc = Const(pb.fst), Const(pb.snd)
    t = bracket_abstract_many(
        ["z"], ec(ec(qc, fstc(z)), sndc(z)), k=Const(B.k), s=Const(B.s)
    )
    meet_out = eval_term(B, t, fuel)
    if not isinstance(meet_out, Defined):
        raise RuntimeError("budget exhausted building meet certificate")

    f = MeetMapDescription(
        source=A,
        target=B,
        values=gamma.gamma,
        mono_realizer=mono_realizer,
        meet_realizer=meet_out.value,
        source_pairing=pa,
        target_pairing=pb,
    )
    return f, verify_meetmap(f, samples=samples, fuel=fuel)


def verify_meetmap(f: MeetMapDescription, samples: int = 12, fuel: int = 10_000) -> ReportSet:
    rs = ReportSet()
    A, B = f.source, f.target
    elems = A.sample(samples)
    budget_hits = 0
    checked = 0
    for r in elems:
        s_r = f.mono_realizer(r)
        for a in elems:
            ra = A.apply(r, a, fuel)
            if isinstance(ra, Budget):
                continue  # (r . -) not defined here within fuel: nothing to track
            image = f.values(ra.value)
            for b in f.values(a):
                sb = B.apply(s_r, b, fuel)
                if isinstance(sb, Budget):
                    budget_hits += 1
                    continue
                checked += 1
                if sb.value not in image:
                    rs.add(
                        failed(
                            "meetmap.monotone",
                            "base-map-tracking",
                            {"r": r, "a": a, "b": b, "got": sb.value},
                        )
                    )
                    return rs
    rs.add(
        unknown("meetmap.monotone", "base-map-tracking", f"{budget_hits} budget hits")
        if budget_hits
        else passed("meetmap.monotone", "base-map-tracking", f"{checked} instances")
    )

    budget_hits = checked = 0
    for a in elems:
        for a2 in elems:
            meet = A.apply_many(f.source_pairing.pair, [a, a2], fuel)
            if isinstance(meet, Budget):
                budget_hits += 1
                continue
            image = f.values(meet.value)
            for b in f.values(a):
                for b2 in f.values(a2):
                    bm = B.apply_many(f.target_pairing.pair, [b, b2], fuel)
                    if isinstance(bm, Budget):
                        budget_hits += 1
                        continue
                    out = B.apply(f.meet_realizer, bm.value, fuel)
                    if isinstance(out, Budget):
                        budget_hits += 1
                        continue
                    checked += 1
                    if out.value not in image:
                        rs.add(
                            failed(
                                "meetmap.meets",
                                "meet-preservation",
                                {"a": a, "a'": a2, "b": b, "b'": b2, "got": out.value},
                            )
                        )
                        return rs
    rs.add(
        unknown("meetmap.meets", "meet-preservation", f"{budget_hits} budget hits")
        if budget_hits
        else passed("meetmap.meets", "meet-preservation", f"{checked} instances")
    )
    return rs


def meetmap_to_applicative(
    f: MeetMapDescription,
    samples: int = 12,
    fuel: int = 10_000,
) -> tuple[ApplicativeMorphism, ReportSet]:
    """Rebuild the applicative morphism: e = \\*b b'. s (t (pair b b')) where
    s tracks the source's uncurrying map and t is the meet certificate."""
    A, B = f.source, f.target
    pa, pb = f.source_pairing, f.target_pairing

    # r = \*z. (fst z)(snd z) in the source: r . (a /\ a') >= a . a'
    z = Var("z")
    r_term = bracket_abstract_many(
        ["z"], Const(pa.fst)(z)(Const(pa.snd)(z)), k=Const(A.k), s=Const(A.s)
    )
    r_out = eval_term(A, r_term, fuel)
    if not isinstance(r_out, Defined):
        raise RuntimeError("budget exhausted building uncurrying map")
    s_el = f.mono_realizer(r_out.value)
    t_el = f.meet_realizer

    b1, b2 = Var("b"), Var("c")
    e_term = bracket_abstract_many(
        ["b", "c"],
        Const(s_el)(Const(t_el)(Const(pb.pair)(b1)(b2))),
        k=Const(B.k),
        s=Const(B.s),
    )
    e_out = eval_term(B, e_term, fuel)
    if not isinstance(e_out, Defined):
        raise RuntimeError("budget exhausted building realizer")

    gamma = ApplicativeMorphism(A, B, f.values, e_out.value)
    return gamma, verify_applicative(gamma, samples=samples, fuel=fuel)


def verify_applicative(
    gamma: ApplicativeMorphism, samples: int = 12, fuel: int = 10_000
) -> ReportSet:
    """Bounded check of the applicative-morphism law."""
    rs = ReportSet()
    A, B = gamma.source, gamma.target
    elems = A.sample(samples)
    budget_hits = checked = 0
    for a in elems:
        for a2 in elems:
            aa = A.apply(a, a2, fuel)
            if isinstance(aa, Budget):
                continue
            image = gamma.gamma(aa.value)
            for b in gamma.gamma(a):
                for b2 in gamma.gamma(a2):
                    out = B.apply_many(gamma.realizer, [b, b2], fuel)
                    if isinstance(out, Budget):
                        budget_hits += 1
                        continue
                    checked += 1
                    if out.value not in image:
                        rs.add(
                            failed(
                                "applicative.law",
                                "applicative-morphism",
                                {"a": a, "a'": a2, "b": b, "b'": b2, "got": out.value},
                            )
                        )
                        return rs
    rs.add(
        unknown("applicative.law", "applicative-morphism", f"{budget_hits} budget hits")
        if budget_hits
        else passed("applicative.law", "applicative-morphism", f"{checked} instances")
    )
    return rs
