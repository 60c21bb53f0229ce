"""Signatures, variables, terms and rewrite rules over a finite language.

Terms are immutable trees built from an ordered variable pool x0, x1, ...
and ranked function symbols.  Rank-0 symbols act as constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "Language",
    "Term",
    "Var",
    "App",
    "ArrowPattern",
    "RewriteRule",
    "TermSyntaxError",
    "parse_term",
    "canonicalize",
    "variables_of",
    "is_rewrite_rule",
]


class TermSyntaxError(ValueError):
    """Raised on malformed term input; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Language:
    """A ranked set of function symbols."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.symbols]
        if len(names) != len(set(names)):
            raise ValueError("function symbol names must be pairwise distinct")
        for name, rank in self.symbols:
            if rank < 0:
                raise ValueError(f"symbol {name!r} has negative rank")
            if _is_variable_name(name):
                raise ValueError(f"symbol {name!r} clashes with the variable pool")

    @cached_property
    def rank(self) -> dict[str, int]:
        return dict(self.symbols)

    def __contains__(self, name: str) -> bool:
        return name in self.rank


def _is_variable_name(name: str) -> bool:
    return len(name) > 1 and name[0] == "x" and name[1:].isdigit()


class Term:
    """Base class; concrete terms are Var or App."""

    __slots__ = ()

    def variables(self) -> tuple[int, ...]:
        """Variable indices in first-occurrence order."""
        seen: list[int] = []
        _collect_vars(self, seen)
        return tuple(seen)

    @property
    def rank(self) -> int:
        return len(self.variables())

    def depth(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Var(Term):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable index must be non-negative")

    def depth(self) -> int:
        return 0

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class App(Term):
    symbol: str
    children: tuple[Term, ...] = ()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def __str__(self) -> str:
        if not self.children:
            return self.symbol
        return f"{self.symbol}({','.join(str(c) for c in self.children)})"


def _collect_vars(t: Term, seen: list[int]) -> None:
    if isinstance(t, Var):
        if t.index not in seen:
            seen.append(t.index)
    else:
        for c in t.children:
            _collect_vars(c, seen)


@dataclass(frozen=True)
class ArrowPattern:
    """A pair of terms s -> t with no variable-containment condition."""

    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class RewriteRule:
    """A pair s ->> t where every variable of t occurs in s."""

    lhs: Term
    rhs: Term

    def __post_init__(self):
        if not set(self.rhs.variables()) <= set(self.lhs.variables()):
            raise ValueError(f"not a rewrite rule: {self.lhs} ->> {self.rhs}")

    def __str__(self) -> str:
        return f"{self.lhs} ->> {self.rhs}"


def variables_of(t: Term) -> tuple[int, ...]:
    return t.variables()


def is_rewrite_rule(p: ArrowPattern) -> bool:
    return set(p.rhs.variables()) <= set(p.lhs.variables())


def canonicalize(t: Term) -> Term:
    """Renumber variables to x0, x1, ... in first-occurrence order."""
    mapping = {v: i for i, v in enumerate(t.variables())}
    return _rename(t, mapping)


def _rename(t: Term, mapping: dict[int, int]) -> Term:
    if isinstance(t, Var):
        return Var(mapping[t.index])
    return App(t.symbol, tuple(_rename(c, mapping) for c in t.children))


class _Parser:
    def __init__(self, text: str, language: Language):
        self.text = text
        self.language = language
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise TermSyntaxError("expected identifier", start)
        return self.text[start : self.pos]

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise TermSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def term(self) -> Term:
        start = self.pos
        name = self.ident()
        if _is_variable_name(name):
            return Var(int(name[1:]))
        if name not in self.language:
            raise TermSyntaxError(f"unknown symbol {name!r}", start)
        rank = self.language.rank[name]
        children: tuple[Term, ...] = ()
        if self.peek() == "(":
            self.expect("(")
            args = [self.term()]
            while self.peek() == ",":
                self.expect(",")
                args.append(self.term())
            self.expect(")")
            children = tuple(args)
        if len(children) != rank:
            raise TermSyntaxError(
                f"symbol {name!r} expects {rank} argument(s), got {len(children)}",
                start,
            )
        return App(name, children)


def parse_term(text: str, language: Language) -> Term:
    parser = _Parser(text, language)
    t = parser.term()
    parser.skip_ws()
    if parser.pos != len(text):
        raise TermSyntaxError("trailing input after term", parser.pos)
    return t
