"""Applicative terms over a pca: variables, constants, application.

Surface syntax: identifiers, application by juxtaposition (left
associative), parentheses, and ``\\*x. t`` for bracket abstraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    def __call__(self, *args: "Term") -> "Term":
        t: Term = self
        for a in args:
            t = App(t, a)
        return t


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const(Term):
    value: Any

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term

    def __str__(self) -> str:
        f = str(self.fun)
        a = str(self.arg)
        if isinstance(self.arg, App):
            a = f"({a})"
        return f"{f} {a}"


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    raise TermError(f"not a term: {t!r}")


def substitute(t: Term, name: str, value: Term) -> Term:
    if isinstance(t, Var):
        return value if t.name == name else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(substitute(t.fun, name, value), substitute(t.arg, name, value))
    raise TermError(f"not a term: {t!r}")


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Decompose t into its head and argument list."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        yield from subterms(t.fun)
        yield from subterms(t.arg)


# --- surface syntax -------------------------------------------------------

_PUNCT = set("(). ")


def _tokenize(src: str) -> list[str]:
    toks: list[str] = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
        elif c in "().":
            toks.append(c)
            i += 1
        elif src.startswith("\\*", i):
            toks.append("\\*")
            i += 2
        else:
            j = i
            while j < len(src) and not src[j].isspace() and src[j] not in _PUNCT and not src.startswith("\\*", j):
                j += 1
            toks.append(src[i:j])
            i = j
    return toks


class _Parser:
    def __init__(self, toks: list[str]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise TermError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise TermError(f"expected {tok!r}, got {got!r}")

    def parse_expr(self) -> Term:
        t = self.parse_atom()
        while True:
            nxt = self.peek()
            if nxt is None or nxt in (")",):
                return t
            t = App(t, self.parse_atom())

    def parse_atom(self) -> Term:
        tok = self.next()
        if tok == "(":
            t = self.parse_expr()
            self.expect(")")
            return t
        if tok == "\\*":
            names = []
            while self.peek() not in (".", None):
                names.append(self.next())
            self.expect(".")
            if not names:
                raise TermError("abstraction with no variables")
            body = self.parse_expr()
            from .abstraction import bracket_abstract

            for name in reversed(names):
                body = bracket_abstract(name, body)
            return body
        if tok in (")", "."):
            raise TermError(f"unexpected {tok!r}")
        return Var(tok)


def parse(src: str) -> Term:
    """Parse the surface syntax; every identifier becomes a Var."""
    p = _Parser(_tokenize(src))
    t = p.parse_expr()
    if p.peek() is not None:
        raise TermError(f"trailing input at {p.peek()!r}")
    return t
