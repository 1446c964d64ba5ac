"""Existential primality of powerset predicates.

The positive certificate is local isomorphism to a singleton-valued image:
every value set is inhabited and uniformly interreducible to a chosen
representative, with two base relations doing the two directions.  The
certificate is complete for finite structures: when it fails, the support
span itself (apex = all (index, member) pairs) is a replayable
counterexample, because a uniform section of it would rebuild the
certificate through base composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..relcore import FinFun, FinSet, Rel, fs
from ..uord import Predicate, entails
from .dpred import SpanPredicate, dexists, dpredicate, powerset_to_span, span_to_powerset
from .power import PowerUOrd


@dataclass(frozen=True)
class PrimeResult:
    verdict: bool | None
    certificate: Any = None
    counterexample: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.verdict is True


def is_prime(du: PowerUOrd, p: Predicate | SpanPredicate, bound: int = 3) -> PrimeResult:
    """Decide existential primality of a predicate on a powerset structure.

    ``bound`` is the advertised span-size budget for counterexamples; the
    canonical refuting span (the support span) is reported even when it is
    larger, since the certificate argument makes the answer exact.
    """
    if isinstance(p, SpanPredicate):
        p = span_to_powerset(du, p)
    src = du.source
    i = p.sort
    car = src.carrier(i)
    base = src.base_at(i, i)

    for n1, r1 in enumerate(base):
        for n2, r2 in enumerate(base):
            reps = []
            for m in p.M.elements:
                vals = p.value(m)
                rep = next(
                    (
                        a
                        for a in car.elements
                        if all(r1.holds(x, a) for x in vals)
                        and any(r2.holds(a, y) for y in vals)
                    ),
                    None,
                )
                if rep is None:
                    break
                reps.append(rep)
            else:
                return PrimeResult(
                    True,
                    certificate={
                        "collapse-base": n1,
                        "return-base": n2,
                        "representatives": reps,
                    },
                    detail="every value set is inhabited and interreducible to a point",
                )

    span = support_span(du, p)
    sections = _section_count(p)
    return PrimeResult(
        False,
        counterexample={
            "apex": list(span.leg.src.elements),
            "leg": [span.leg(k) for k in span.leg.src.elements],
            "values": [span.pred.value(k) for k in span.pred.M.elements],
            "sections": sections,
        },
        detail="the support span admits no uniformly tracked section",
    )


def support_span(du: PowerUOrd, p: Predicate) -> SpanPredicate:
    return powerset_to_span(du, p)


def _section_count(p: Predicate) -> int:
    n = 1
    for m in p.M.elements:
        n *= len(p.value(m))
    return n


def replay_counterexample(du: PowerUOrd, p: Predicate) -> bool:
    """Check that the support span really refutes primality:

    the predicate entails the existential of the pointed span values, yet
    no section of the span leg is uniformly tracked."""
    span = support_span(du, p)
    theta = dpredicate(
        du,
        span.leg.src,
        p.sort,
        (frozenset([span.pred.value(k)]) for k in span.pred.M.elements),
    )
    hypothesis = entails(du, p, dexists(du, theta, span.leg))
    if not hypothesis:
        return False

    apex = span.leg.src
    fibers = {
        m: [k for k in apex.elements if span.leg(k) == m] for m in p.M.elements
    }
    if any(not f for f in fibers.values()):
        return True  # no section at all
    import itertools

    for combo in itertools.product(*(fibers[m] for m in p.M.elements)):
        section_ok = entails(
            du,
            p,
            dpredicate(
                du,
                p.M,
                p.sort,
                (frozenset([span.pred.value(k)]) for k in combo),
            ),
        )
        if section_ok:
            return False  # a section works: not a counterexample
    return True
