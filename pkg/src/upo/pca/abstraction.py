"""Bracket abstraction and the pairing combinator it buys.

The abstraction scheme is the eta-free k/s/i one, so abstracts are always
defined (they head-normalize immediately); applying an abstract can only be
more defined than the substituted body (Kleene inequality).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import sk
from .core import Defined, EffectivePca, Outcome, eval_term
from .terms import App, Const, Term, TermError, Var, free_vars


def bracket_abstract(
    name: str, t: Term, k: Term | None = None, s: Term | None = None
) -> Term:
    """Abstract the variable ``name`` out of t over the combinators k, s.

    The combinator constants default to the S/K machine's atoms.  The result
    has no free occurrence of ``name`` and satisfies
    ``eval((t* a)) >= eval(t[a/x])`` in the Kleene order.
    """
    k = k if k is not None else Const(sk.K)
    s = s if s is not None else Const(sk.S)
    i = App(App(s, k), k)

    def go(t: Term) -> Term:
        if isinstance(t, Var) and t.name == name:
            return i
        if name not in free_vars(t):
            return App(k, t)
        assert isinstance(t, App)
        return App(App(s, go(t.fun)), go(t.arg))

    return go(t)


def bracket_abstract_many(names: list[str], t: Term, **kw: Any) -> Term:
    for name in reversed(names):
        t = bracket_abstract(name, t, **kw)
    return t


def resolve(t: Term, env: dict[str, Any]) -> Term:
    """Replace each variable by the constant the environment assigns to it."""
    if isinstance(t, Var):
        if t.name not in env:
            raise TermError(f"unbound variable {t.name!r}")
        return Const(env[t.name])
    if isinstance(t, Const):
        return t
    assert isinstance(t, App)
    return App(resolve(t.fun, env), resolve(t.arg, env))


@dataclass(frozen=True)
class Pairing:
    pair: Any
    fst: Any
    snd: Any


def derive_pairing(pca: EffectivePca, fuel: int = 10_000) -> Pairing:
    """Build pair/fst/snd from k and s via functional completeness.

    pair = \\*x y z. z x y ;  fst = \\*p. p k ;  snd = \\*p. p (k i).
    """
    kc, sc = Const(pca.k), Const(pca.s)
    x, y, z, p = Var("x"), Var("y"), Var("z"), Var("p")
    ident = App(App(sc, kc), kc)

    def close(names: list[str], body: Term) -> Any:
        t = bracket_abstract_many(names, body, k=kc, s=sc)
        out = eval_term(pca, t, fuel)
        if not isinstance(out, Defined):
            raise RuntimeError("fuel exhausted while deriving pairing")
        return out.value

    pair = close(["x", "y", "z"], z(x, y))
    fst = close(["p"], p(kc))
    snd = close(["p"], p(App(kc, ident)))
    return Pairing(pair=pair, fst=fst, snd=snd)


def kleene_leq(lhs: Outcome, rhs: Outcome) -> bool:
    """rhs defined implies lhs defined with the same value.

    With fuel-bounded evaluation a Budget on the left is inconclusive; we
    treat it as a failure so callers retry with more fuel if they care.
    """
    if isinstance(rhs, Defined):
        return isinstance(lhs, Defined) and lhs.value == rhs.value
    return True
