"""Effective partial combinatory algebras with fuel-bounded application.

Definedness of an application is only semidecided: every answer is either
``Defined(value)`` or ``Budget`` (fuel ran out, definedness unknown) - never
a false "undefined".  Increasing fuel can only turn Budget into Defined,
never change a Defined value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterator

from .terms import App, Const, Term, TermError, Var, free_vars


@dataclass(frozen=True)
class Outcome:
    pass


@dataclass(frozen=True)
class Defined(Outcome):
    value: Any

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Budget(Outcome):
    """Fuel exhausted; definedness unknown."""

    def __bool__(self) -> bool:
        return False


BUDGET = Budget()


class Fuel:
    """A mutable step budget shared across the inner applications of a term."""

    def __init__(self, steps: int):
        self.steps = steps

    def spend(self, n: int = 1) -> bool:
        if self.steps < n:
            self.steps = 0
            return False
        self.steps -= n
        return True


@dataclass
class EffectivePca:
    """A countable applicative structure with fuel-bounded application.

    ``apply_fuel(a, b, fuel)`` must be deterministic given the budget and
    fuel-monotone.  ``enumerate_elements`` is a restartable stable stream
    used for reproducible sampling.
    """

    name: str
    apply_fuel: Callable[[Any, Any, Fuel], Outcome]
    enumerate_elements: Callable[[], Iterator[Any]]
    k: Any
    s: Any

    def apply(self, a: Any, b: Any, fuel: int) -> Outcome:
        return self.apply_fuel(a, b, Fuel(fuel))

    def apply_many(self, head: Any, args: list[Any], fuel: int) -> Outcome:
        budget = Fuel(fuel)
        acc = head
        for a in args:
            out = self.apply_fuel(acc, a, budget)
            if not isinstance(out, Defined):
                return out
            acc = out.value
        return Defined(acc)

    def sample(self, n: int) -> list[Any]:
        """First n elements of the stable enumeration (always from index 0)."""
        return list(itertools.islice(self.enumerate_elements(), n))


def eval_term(pca: EffectivePca, t: Term, fuel: int) -> Outcome:
    """Strict left-to-right evaluation of a closed application tree.

    Each inner application consumes from one shared budget.
    """
    fv = free_vars(t)
    if fv:
        raise TermError(f"unbound variables {sorted(fv)}")
    budget = Fuel(fuel)

    def go(t: Term) -> Outcome:
        if isinstance(t, Const):
            return Defined(t.value)
        if isinstance(t, App):
            f = go(t.fun)
            if not isinstance(f, Defined):
                return f
            a = go(t.arg)
            if not isinstance(a, Defined):
                return a
            return pca.apply_fuel(f.value, a.value, budget)
        raise TermError(f"cannot evaluate {t!r}")

    return go(t)
