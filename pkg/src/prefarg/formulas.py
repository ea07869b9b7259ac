"""Propositional formulas: parsing, rendering, satisfiability, entailment.

Formula syntax:

    atom          [a-z][a-zA-Z0-9_]*
    negation      !f  or  ~f
    conjunction   f & g
    disjunction   f | g
    implication   f -> g        (right-associative)
    equivalence   f <-> g       (right-associative)

Binding strength, tightest first: ! & | -> <->. Whitespace is
insignificant. Rendering uses `!`, single spaces around binary
connectives and minimal parentheses; parsing the rendered text yields
the identical tree.

Satisfiability questions are answered by complete truth-table
evaluation, vectorized as bitmasks over the assignment space: bit i of
a formula's mask holds the formula's value under assignment i, where
bit k of i is the value of atom k. Formula sets in this package stay
small (a handful of atoms), so the exhaustive procedure is simple,
exact and fast enough.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceededError, FormulaSyntaxError

# Masks occupy 2**n bits for n atoms; past this the integers get silly.
MAX_TABLE_ATOMS = 24


class Formula:
    """Immutable AST node; concrete nodes are the dataclasses below."""

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Atom: 6}
_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_RIGHT_ASSOCIATIVE = (Implies, Iff)


def _prec(f: Formula) -> int:
    return _PRECEDENCE[type(f)]


def render(f: Formula) -> str:
    """Canonical text for a formula; parse_formula(render(f)) == f."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = render(f.operand)
        if _prec(f.operand) < _PRECEDENCE[Not]:
            inner = f"({inner})"
        return "!" + inner
    mine = _prec(f)
    left, right = render(f.left), render(f.right)
    if isinstance(f, _RIGHT_ASSOCIATIVE):
        if _prec(f.left) <= mine:
            left = f"({left})"
        if _prec(f.right) < mine:
            right = f"({right})"
    else:
        if _prec(f.left) < mine:
            left = f"({left})"
        if _prec(f.right) <= mine:
            right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


_TOKEN_RE = re.compile(
    r"""[ \t\r\n]*(?:
          (?P<atom>[a-z][a-zA-Z0-9_]*)
        | (?P<iff><->)
        | (?P<implies>->)
        | (?P<neg>[!~])
        | (?P<conj>&)
        | (?P<disj>\|)
        | (?P<lparen>\()
        | (?P<rparen>\))
    )""",
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            where = len(text) - len(rest)
            raise FormulaSyntaxError(f"unexpected character {rest[0]!r}", where)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        tok = self.peek()
        if tok.kind != "end":
            raise FormulaSyntaxError(f"unexpected {tok.text!r}", tok.position)
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek().kind == "iff":
            self.take()
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "implies":
            self.take()
            return Implies(left, self.implies())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "disj":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "conj":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "neg":
            self.take()
            return Not(self.unary())
        if tok.kind == "atom":
            self.take()
            return Atom(tok.text)
        if tok.kind == "lparen":
            self.take()
            f = self.iff()
            closing = self.peek()
            if closing.kind != "rparen":
                raise FormulaSyntaxError("expected ')'", closing.position)
            self.take()
            return f
        if tok.kind == "end":
            raise FormulaSyntaxError("unexpected end of input", tok.position)
        raise FormulaSyntaxError(f"unexpected {tok.text!r}", tok.position)


def parse_formula(text: str) -> Formula:
    """Parse formula text into an AST, or raise FormulaSyntaxError."""
    if not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    return _Parser(_tokenize(text)).parse()


def atoms(f: Formula) -> frozenset[str]:
    """Atom names occurring in a formula."""
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.operand)
        else:
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def unique_formulas(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    """Order-preserving dedup by structural identity."""
    return tuple(dict.fromkeys(formulas))


class TruthTable:
    """Truth masks for formulas over a fixed ordered atom list.

    Assignment i sets atom k true iff bit k of i is set; mask(f) has bit
    i set iff f holds under assignment i. Consistency and entailment of
    whole formula sets then reduce to integer bit operations.
    """

    def __init__(self, atom_names: Iterable[str]):
        names = list(dict.fromkeys(atom_names))
        if len(names) > MAX_TABLE_ATOMS:
            raise CapExceededError(
                f"{len(names)} atoms exceed the truth-table limit of {MAX_TABLE_ATOMS}"
            )
        self.atoms = tuple(names)
        self.n_assignments = 1 << len(names)
        self.full = (1 << self.n_assignments) - 1
        self._atom_masks = {name: self._atom_mask(k) for k, name in enumerate(names)}
        self._cache: dict[Formula, int] = {}

    def _atom_mask(self, k: int) -> int:
        # One period is 2**k zeros followed by 2**k ones; replicate it
        # across the assignment space with a comb multiplier.
        block = 1 << k
        period = block << 1
        ones = ((1 << block) - 1) << block
        comb = ((1 << self.n_assignments) - 1) // ((1 << period) - 1)
        return ones * comb

    def mask(self, f: Formula) -> int:
        cached = self._cache.get(f)
        if cached is not None:
            return cached
        if isinstance(f, Atom):
            try:
                value = self._atom_masks[f.name]
            except KeyError:
                raise ValueError(f"atom {f.name!r} not in this table") from None
        elif isinstance(f, Not):
            value = self.full ^ self.mask(f.operand)
        elif isinstance(f, And):
            value = self.mask(f.left) & self.mask(f.right)
        elif isinstance(f, Or):
            value = self.mask(f.left) | self.mask(f.right)
        elif isinstance(f, Implies):
            value = (self.full ^ self.mask(f.left)) | self.mask(f.right)
        elif isinstance(f, Iff):
            value = self.full ^ (self.mask(f.left) ^ self.mask(f.right))
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._cache[f] = value
        return value

    def conjunction_mask(self, formulas: Iterable[Formula]) -> int:
        m = self.full
        for f in formulas:
            m &= self.mask(f)
        return m


def _table_for(formulas: list[Formula]) -> TruthTable:
    names: set[str] = set()
    for f in formulas:
        names |= atoms(f)
    return TruthTable(sorted(names))


def is_consistent(formulas: Iterable[Formula]) -> bool:
    """True iff the formulas are jointly satisfiable; the empty set is."""
    fs = list(formulas)
    table = _table_for(fs)
    return table.conjunction_mask(fs) != 0


def entails(premises: Iterable[Formula], conclusion: Formula) -> bool:
    """True iff every model of the premises satisfies the conclusion.

    An unsatisfiable premise set entails everything.
    """
    ps = list(premises)
    table = _table_for(ps + [conclusion])
    return table.conjunction_mask(ps) & (table.full ^ table.mask(conclusion)) == 0


def equivalent(f: Formula, g: Formula) -> bool:
    """True iff f and g entail each other."""
    return entails([f], g) and entails([g], f)


def negate_canonical(f: Formula) -> Formula:
    """Negate f, stripping an outermost double negation (!!g collapses to g)."""
    if isinstance(f, Not):
        return f.operand
    return Not(f)
