"""Finite algebras: operation tables, term evaluation, homomorphisms.

The text format for algebra/mapping specs is::

    algebra <name> {
      universe: e1, e2, ...;
      op <sym>/<rank>: (t1,...,tk) -> e, ...;    # unary rows may drop parens
      op <sym>/<rank> default identity: t -> e, ...;   # unary only
    }
    mapping <name> : <algA> -> <algB> { e1 -> u1, ...; }

Comments run from ``#`` to end of line.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

from .terms import App, Language, Term, Var

__all__ = [
    "Element",
    "FiniteAlgebra",
    "Mapping",
    "AlgebraSpecError",
    "SpecFile",
    "parse_spec_file",
    "load_algebra",
    "evaluate",
    "is_homomorphism",
    "is_isomorphism",
    "solution_set",
    "unique_solution_elements",
    "is_injective_term",
]

Element = str
Assignment = dict[int, Element]


class AlgebraSpecError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    language: Language
    universe: tuple[Element, ...]
    # symbol -> { argument tuple -> result }
    tables: dict[str, dict[tuple[Element, ...], Element]] = field(hash=False)

    def __post_init__(self):
        if not self.universe:
            raise AlgebraSpecError(f"algebra {self.name!r}: universe is empty")
        if len(set(self.universe)) != len(self.universe):
            raise AlgebraSpecError(f"algebra {self.name!r}: duplicate element")
        elems = set(self.universe)
        for sym, rank in self.language.symbols:
            table = self.tables.get(sym)
            if table is None:
                raise AlgebraSpecError(f"algebra {self.name!r}: no table for {sym}")
            for args in itertools.product(self.universe, repeat=rank):
                if args not in table:
                    raise AlgebraSpecError(
                        f"algebra {self.name!r}: missing row {sym}{args}"
                    )
                if table[args] not in elems:
                    raise AlgebraSpecError(
                        f"algebra {self.name!r}: {sym}{args} -> {table[args]}"
                        " is outside the universe"
                    )

    def apply(self, symbol: str, args: tuple[Element, ...]) -> Element:
        return self.tables[symbol][args]

    @cached_property
    def index(self) -> dict[Element, int]:
        return {e: i for i, e in enumerate(self.universe)}


@dataclass(frozen=True)
class Mapping:
    name: str
    source: FiniteAlgebra
    target: FiniteAlgebra
    table: dict[Element, Element] = field(hash=False)

    def __post_init__(self):
        for e in self.source.universe:
            if e not in self.table:
                raise AlgebraSpecError(f"mapping {self.name!r}: no image for {e!r}")
        for e, v in self.table.items():
            if v not in self.target.index:
                raise AlgebraSpecError(
                    f"mapping {self.name!r}: image {v!r} outside target universe"
                )

    def __call__(self, e: Element) -> Element:
        return self.table[e]


def evaluate(t: Term, alg: FiniteAlgebra, assignment: Assignment) -> Element:
    if isinstance(t, Var):
        try:
            return assignment[t.index]
        except KeyError:
            raise KeyError(f"unassigned variable x{t.index}") from None
    args = tuple(evaluate(c, alg, assignment) for c in t.children)
    return alg.apply(t.symbol, args)


def is_homomorphism(h: Mapping) -> bool:
    if h.source.language != h.target.language:
        raise AlgebraSpecError("homomorphism check requires a common language")
    for sym, rank in h.source.language.symbols:
        for args in itertools.product(h.source.universe, repeat=rank):
            mapped = tuple(h(a) for a in args)
            if h(h.source.apply(sym, args)) != h.target.apply(sym, mapped):
                return False
    return True


def is_isomorphism(h: Mapping) -> bool:
    bijective = len(set(h.table.values())) == len(h.source.universe) == len(
        h.target.universe
    )
    return bijective and is_homomorphism(h)


def solution_set(
    s: Term,
    a: Element,
    alg: FiniteAlgebra,
    variables: tuple[int, ...] | None = None,
) -> set[tuple[Element, ...]]:
    """All assignments o over ``variables`` with s(o) = a, as value tuples."""
    if variables is None:
        variables = s.variables()
    if not set(s.variables()) <= set(variables):
        raise ValueError("variables must cover the variables of the term")
    out = set()
    for values in itertools.product(alg.universe, repeat=len(variables)):
        o = dict(zip(variables, values))
        if evaluate(s, alg, o) == a:
            out.add(values)
    return out


def unique_solution_elements(s: Term, alg: FiniteAlgebra) -> set[Element]:
    """Elements with exactly one solution of a = s(x) over the term's variables."""
    return {a for a in alg.universe if len(solution_set(s, a, alg)) == 1}


def is_injective_term(s: Term, alg: FiniteAlgebra) -> bool:
    variables = s.variables()
    seen: set[Element] = set()
    for values in itertools.product(alg.universe, repeat=len(variables)):
        v = evaluate(s, alg, dict(zip(variables, values)))
        if v in seen:
            return False
        seen.add(v)
    return True


# --- spec file parsing -------------------------------------------------------


@dataclass
class SpecFile:
    algebras: dict[str, FiniteAlgebra]
    mappings: dict[str, Mapping]


_TOKEN = re.compile(
    r"\s+|#[^\n]*"  # whitespace and comments
    r"|(?P<word>[A-Za-z0-9_]+)"
    r"|(?P<arrow>->)"
    r"|(?P<punct>[{}():,;/])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise AlgebraSpecError(f"unexpected character {text[pos]!r} at {pos}")
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _SpecParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise AlgebraSpecError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, got, pos = self.next()
        if got != value:
            raise AlgebraSpecError(f"expected {value!r}, got {got!r} at {pos}")

    def word(self) -> str:
        kind, got, pos = self.next()
        if kind != "word":
            raise AlgebraSpecError(f"expected identifier, got {got!r} at {pos}")
        return got

    def parse(self) -> SpecFile:
        algebras: dict[str, FiniteAlgebra] = {}
        mappings: dict[str, Mapping] = {}
        while self.peek() is not None:
            keyword = self.word()
            if keyword == "algebra":
                alg = self.algebra()
                if alg.name in algebras:
                    raise AlgebraSpecError(f"duplicate algebra {alg.name!r}")
                algebras[alg.name] = alg
            elif keyword == "mapping":
                m = self.mapping(algebras)
                if m.name in mappings:
                    raise AlgebraSpecError(f"duplicate mapping {m.name!r}")
                mappings[m.name] = m
            else:
                raise AlgebraSpecError(f"expected 'algebra' or 'mapping', got {keyword!r}")
        return SpecFile(algebras, mappings)

    def algebra(self) -> FiniteAlgebra:
        name = self.word()
        self.expect("{")
        self.expect("universe")
        self.expect(":")
        universe = [self.word()]
        while self.peek() and self.peek()[1] == ",":
            self.next()
            universe.append(self.word())
        self.expect(";")
        symbols: list[tuple[str, int]] = []
        tables: dict[str, dict[tuple[Element, ...], Element]] = {}
        while self.peek() and self.peek()[1] == "op":
            self.next()
            sym = self.word()
            self.expect("/")
            rank_word = self.word() if self.peek()[0] == "word" else None
            if rank_word is None or not rank_word.isdigit():
                raise AlgebraSpecError(f"expected rank after {sym!r}/")
            rank = int(rank_word)
            default_identity = False
            if self.peek() and self.peek()[1] == "default":
                self.next()
                self.expect("identity")
                if rank != 1:
                    raise AlgebraSpecError("default identity is only valid for unary ops")
                default_identity = True
            self.expect(":")
            table: dict[tuple[Element, ...], Element] = {}
            if default_identity:
                table = {(e,): e for e in universe}
            while True:
                args = self.op_args(rank)
                self.expect("->")
                result = self.word()
                table[args] = result
                if self.peek() and self.peek()[1] == ",":
                    self.next()
                    continue
                break
            self.expect(";")
            if sym in tables:
                raise AlgebraSpecError(f"duplicate op {sym!r}")
            symbols.append((sym, rank))
            tables[sym] = table
        self.expect("}")
        return FiniteAlgebra(name, Language(tuple(symbols)), tuple(universe), tables)

    def op_args(self, rank: int) -> tuple[Element, ...]:
        if self.peek() and self.peek()[1] == "(":
            self.next()
            args = []
            if rank > 0:
                args.append(self.word())
                while self.peek() and self.peek()[1] == ",":
                    self.next()
                    args.append(self.word())
            self.expect(")")
        elif rank == 1:
            args = [self.word()]
        elif rank == 0:
            args = []
        else:
            raise AlgebraSpecError("rows for ops of rank >= 2 need parentheses")
        if len(args) != rank:
            raise AlgebraSpecError(f"expected {rank} argument(s), got {len(args)}")
        return tuple(args)

    def mapping(self, algebras: dict[str, FiniteAlgebra]) -> Mapping:
        name = self.word()
        self.expect(":")
        src = self.word()
        self.expect("->")
        dst = self.word()
        for ref in (src, dst):
            if ref not in algebras:
                raise AlgebraSpecError(f"mapping {name!r} references unknown algebra {ref!r}")
        self.expect("{")
        table: dict[Element, Element] = {}
        while self.peek() and self.peek()[1] != "}":
            e = self.word()
            self.expect("->")
            v = self.word()
            if e in table:
                raise AlgebraSpecError(f"mapping {name!r}: duplicate entry for {e!r}")
            table[e] = v
            if self.peek() and self.peek()[1] in (",", ";"):
                self.next()
        self.expect("}")
        return Mapping(name, algebras[src], algebras[dst], table)


def parse_spec_file(text: str) -> SpecFile:
    return _SpecParser(text).parse()


def load_algebra(text: str) -> tuple[Language, FiniteAlgebra]:
    """Load a spec containing exactly one algebra."""
    spec = parse_spec_file(text)
    if len(spec.algebras) != 1:
        raise AlgebraSpecError("expected exactly one algebra in the spec")
    alg = next(iter(spec.algebras.values()))
    return alg.language, alg


def term_table(
    t: Term, alg: FiniteAlgebra, variables: tuple[int, ...]
) -> tuple[Element, ...]:
    """The full denotation table of t over assignments to ``variables``."""
    out = []
    for values in itertools.product(alg.universe, repeat=len(variables)):
        out.append(evaluate(t, alg, dict(zip(variables, values))))
    return tuple(out)
