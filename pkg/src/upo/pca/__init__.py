"""Effective partial combinatory algebras: terms, the S/K machine, bracket
abstraction, typed data, sub-pcas, and applicative morphisms."""

from .abstraction import (
    Pairing,
    bracket_abstract,
    bracket_abstract_many,
    derive_pairing,
    kleene_leq,
    resolve,
)
from .core import BUDGET, Budget, Defined, EffectivePca, Fuel, Outcome, eval_term
from .morphisms import (
    ApplicativeMorphism,
    MeetMapDescription,
    applicative_to_meetmap,
    identity_morphism,
    meetmap_to_applicative,
    verify_applicative,
    verify_meetmap,
)
from .sk import SK, Ap, Atom, I, K, S, divergent, enumerate_normal, is_normal, sk_pca, whnf
from .terms import App, Const, Term, TermError, Var, free_vars, parse, substitute
from .typed import SubPcaData, TypedPcaData, check_sub_pca, check_typed_pca, one_sorted

__all__ = [
    "App", "ApplicativeMorphism", "Atom", "BUDGET", "Budget", "Const", "Defined",
    "EffectivePca", "Fuel", "I", "K", "MeetMapDescription", "Outcome", "Pairing",
    "S", "SK", "Ap", "SubPcaData", "Term", "TermError", "TypedPcaData", "Var",
    "applicative_to_meetmap", "bracket_abstract", "bracket_abstract_many",
    "check_sub_pca", "check_typed_pca", "derive_pairing", "divergent",
    "enumerate_normal", "eval_term", "free_vars", "identity_morphism", "is_normal",
    "kleene_leq", "meetmap_to_applicative", "one_sorted", "parse", "resolve",
    "sk_pca", "substitute", "verify_applicative", "verify_meetmap", "whnf",
]
