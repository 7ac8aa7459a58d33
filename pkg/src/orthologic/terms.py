"""Ortholattice terms, annotated formulas, sequents and node identifiers.

Terms are immutable trees built from ``Var``, ``Meet``, ``Join``, ``Not``,
``Zero`` and ``One``.  A sequent is an ordered pair of annotated formulas,
each of which is ``N`` (no formula), ``L(t)`` (t on the left of the
turnstile) or ``R(t)`` (t on the right).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import ClassVar, Dict, Iterator, List, Optional, Tuple, Union

__all__ = [
    "Term", "Var", "Meet", "Join", "Not", "Zero", "One", "ZERO", "ONE",
    "L", "R", "N", "AnnotatedFormula", "Sequent",
    "ParseError", "parse_term", "parse_goal", "print_term", "print_an",
    "parse_an", "var_name", "canonical_symbols",
    "term_size", "an_size", "sequent_size", "compare", "compare_terms",
    "compare_sequents", "subterms", "variables", "relabel_first_occurrence",
    "IdTerm", "VarP", "MeetP", "JoinP", "NotP", "ZeroP", "OneP",
    "annotate", "forget_ids", "id_table", "InjectivityError",
    "NP", "LP", "RP", "an_key",
]

# constructor tags, in the order used by ``compare``
VAR, MEET, JOIN, NOT, ZERO_TAG, ONE_TAG = range(6)


class Term:
    __slots__ = ()
    tag: ClassVar[int]

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int
    tag: ClassVar[int] = VAR

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True, slots=True)
class Meet(Term):
    l: Term
    r: Term
    _h: int = field(default=0, init=False, repr=False, compare=False)
    tag: ClassVar[int] = MEET

    def __hash__(self):
        h = self._h
        if not h:
            h = hash((MEET, self.l, self.r))
            object.__setattr__(self, "_h", h)
        return h


@dataclass(frozen=True, slots=True)
class Join(Term):
    l: Term
    r: Term
    _h: int = field(default=0, init=False, repr=False, compare=False)
    tag: ClassVar[int] = JOIN

    def __hash__(self):
        h = self._h
        if not h:
            h = hash((JOIN, self.l, self.r))
            object.__setattr__(self, "_h", h)
        return h


@dataclass(frozen=True, slots=True)
class Not(Term):
    t: Term
    _h: int = field(default=0, init=False, repr=False, compare=False)
    tag: ClassVar[int] = NOT

    def __hash__(self):
        h = self._h
        if not h:
            h = hash((NOT, self.t))
            object.__setattr__(self, "_h", h)
        return h


@dataclass(frozen=True, slots=True)
class Zero(Term):
    tag: ClassVar[int] = ZERO_TAG


@dataclass(frozen=True, slots=True)
class One(Term):
    tag: ClassVar[int] = ONE_TAG


ZERO = Zero()
ONE = One()


# ---------------------------------------------------------------------------
# annotated formulas

SIDE_N, SIDE_L, SIDE_R = 0, 1, 2


class _NoFormula:
    __slots__ = ()
    side = SIDE_N
    t = None

    def __repr__(self):
        return "N"

    def __reduce__(self):
        return "N"


N = _NoFormula()


@dataclass(frozen=True, slots=True)
class L:
    t: Term
    _h: int = field(default=0, init=False, repr=False, compare=False)
    side: ClassVar[int] = SIDE_L

    def __hash__(self):
        h = self._h
        if not h:
            h = hash((SIDE_L, self.t))
            object.__setattr__(self, "_h", h)
        return h

    def __repr__(self):
        return f"L({print_term(self.t)})"


@dataclass(frozen=True, slots=True)
class R:
    t: Term
    _h: int = field(default=0, init=False, repr=False, compare=False)
    side: ClassVar[int] = SIDE_R

    def __hash__(self):
        h = self._h
        if not h:
            h = hash((SIDE_R, self.t))
            object.__setattr__(self, "_h", h)
        return h

    def __repr__(self):
        return f"R({print_term(self.t)})"


AnnotatedFormula = Union[_NoFormula, L, R]
Sequent = Tuple[AnnotatedFormula, AnnotatedFormula]


# ---------------------------------------------------------------------------
# sizes and ordering

def term_size(t: Term) -> int:
    """Number of nodes of ``t``."""
    size = 0
    stack = [t]
    while stack:
        u = stack.pop()
        size += 1
        tag = u.tag
        if tag == MEET or tag == JOIN:
            stack.append(u.l)
            stack.append(u.r)
        elif tag == NOT:
            stack.append(u.t)
    return size


def an_size(a: AnnotatedFormula) -> int:
    return 0 if a is N else term_size(a.t)


def sequent_size(g: AnnotatedFormula, d: AnnotatedFormula) -> int:
    return an_size(g) + an_size(d)


def compare_terms(a: Term, b: Term) -> int:
    """Three-way structural comparison (-1, 0, 1).

    Constructor order is Var < Meet < Join < Not < Zero < One; nodes with
    the same constructor compare children left to right, variables by
    index.  There is deliberately no identity shortcut: the cost is linear
    in the size of the common prefix.
    """
    ta = a.tag
    tb = b.tag
    if ta != tb:
        return -1 if ta < tb else 1
    if ta == VAR:
        i, j = a.index, b.index
        return -1 if i < j else (1 if i > j else 0)
    if ta == NOT:
        return compare_terms(a.t, b.t)
    if ta == MEET or ta == JOIN:
        c = compare_terms(a.l, b.l)
        if c:
            return c
        return compare_terms(a.r, b.r)
    return 0


def compare(a: AnnotatedFormula, b: AnnotatedFormula) -> int:
    """Total order on annotated formulas: N < L < R, then the term order."""
    sa = a.side
    sb = b.side
    if sa != sb:
        return -1 if sa < sb else 1
    if sa == SIDE_N:
        return 0
    return compare_terms(a.t, b.t)


def compare_sequents(x: Sequent, y: Sequent) -> int:
    a, b = x[0], y[0]
    sa, sb = a.side, b.side
    if sa != sb:
        return -1 if sa < sb else 1
    if sa != SIDE_N:
        c = compare_terms(a.t, b.t)
        if c:
            return c
    a, b = x[1], y[1]
    sa, sb = a.side, b.side
    if sa != sb:
        return -1 if sa < sb else 1
    if sa == SIDE_N:
        return 0
    return compare_terms(a.t, b.t)


def subterms(t: Term) -> List[Term]:
    """Distinct subterms of ``t`` in preorder of first occurrence."""
    seen = set()
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        out.append(u)
        if u.tag == MEET or u.tag == JOIN:
            stack.append(u.r)
            stack.append(u.l)
        elif u.tag == NOT:
            stack.append(u.t)
    return out


def variables(t: Term) -> List[int]:
    """Sorted list of variable indices occurring in ``t``."""
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        tag = u.tag
        if tag == VAR:
            out.add(u.index)
        elif tag == MEET or tag == JOIN:
            stack.append(u.l)
            stack.append(u.r)
        elif tag == NOT:
            stack.append(u.t)
    return sorted(out)


def relabel_first_occurrence(*terms: Term) -> List[Term]:
    """Renumber variables 1, 2, ... in order of first (preorder) occurrence."""
    mapping: Dict[int, int] = {}

    def go(u):
        tag = u.tag
        if tag == VAR:
            if u.index not in mapping:
                mapping[u.index] = len(mapping) + 1
            return Var(mapping[u.index])
        if tag == MEET:
            return Meet(go(u.l), go(u.r))
        if tag == JOIN:
            return Join(go(u.l), go(u.r))
        if tag == NOT:
            return Not(go(u.t))
        return u

    return [go(t) for t in terms]


# ---------------------------------------------------------------------------
# concrete syntax

_LETTERS = "abcdefghijklmnopqrstuvw"


def var_name(index: int) -> str:
    """a, b, ..., w for 1..23, then x1, x2, ..."""
    if index <= len(_LETTERS):
        return _LETTERS[index - 1]
    return f"x{index - len(_LETTERS)}"


def canonical_symbols(limit: int = 1000) -> Dict[str, int]:
    """Symbol table inverting ``var_name`` for indices up to ``limit``."""
    return {var_name(i): i for i in range(1, limit + 1)}


_PREC_DISJ, _PREC_CONJ, _PREC_NEG = 0, 1, 2


def print_term(t: Term, names: Optional[Dict[int, str]] = None) -> str:
    """Concrete syntax; ``names`` maps indices to identifiers (default ``var_name``)."""
    out: List[str] = []

    def emit(u, prec):
        tag = u.tag
        if tag == VAR:
            out.append(names[u.index] if names and u.index in names else var_name(u.index))
        elif tag == ZERO_TAG:
            out.append("0")
        elif tag == ONE_TAG:
            out.append("1")
        elif tag == NOT:
            out.append("!")
            emit(u.t, _PREC_NEG)
        else:
            mine = _PREC_DISJ if tag == JOIN else _PREC_CONJ
            op = " | " if tag == JOIN else " & "
            if prec > mine:
                out.append("(")
            emit(u.l, mine)
            out.append(op)
            # left-associative: a right child of the same operator needs parens
            emit(u.r, mine + 1)
            if prec > mine:
                out.append(")")

    emit(t, _PREC_DISJ)
    return "".join(out)


def print_an(a: AnnotatedFormula) -> str:
    if a is N:
        return "N"
    return ("L:" if a.side == SIDE_L else "R:") + print_term(a.t)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(<=)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), m.lastindex == 2, start))
        pos = m.end()
    toks.append(("<eof>", False, len(text)))
    return toks


class _Parser:
    def __init__(self, text, symbols):
        self.toks = _tokenize(text)
        self.i = 0
        self.symbols = symbols

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, s):
        tok, _, pos = self.next()
        if tok != s:
            raise ParseError(f"expected {s!r}, found {tok!r}", pos)

    def term(self):
        t = self.conj()
        while self.peek()[0] == "|":
            self.next()
            t = Join(t, self.conj())
        return t

    def conj(self):
        t = self.neg()
        while self.peek()[0] == "&":
            self.next()
            t = Meet(t, self.neg())
        return t

    def neg(self):
        count = 0
        while self.peek()[0] == "!":
            self.next()
            count += 1
        t = self.atom()
        for _ in range(count):
            t = Not(t)
        return t

    def atom(self):
        tok, is_ident, pos = self.next()
        if tok == "0":
            return ZERO
        if tok == "1":
            return ONE
        if tok == "(":
            t = self.term()
            self.expect(")")
            return t
        if is_ident:
            if tok not in self.symbols:
                self.symbols[tok] = len(self.symbols) + 1
            return Var(self.symbols[tok])
        raise ParseError(f"unexpected {tok!r}", pos)

    def done(self):
        tok, _, pos = self.peek()
        if tok != "<eof>":
            raise ParseError(f"unexpected {tok!r}", pos)


def parse_term(text: str, symbols: Optional[Dict[str, int]] = None) -> Term:
    """Parse a term.

    Identifiers are numbered in order of first occurrence unless a symbol
    table is supplied (it is extended in place with new names).
    """
    p = _Parser(text, {} if symbols is None else symbols)
    t = p.term()
    p.done()
    return t


def parse_goal(text: str, symbols: Optional[Dict[str, int]] = None) -> Tuple[Term, str, Term]:
    """Parse ``s <= t`` or ``s = t``; returns ``(s, op, t)``."""
    p = _Parser(text, {} if symbols is None else symbols)
    s = p.term()
    tok, _, pos = p.next()
    if tok not in ("<=", "="):
        raise ParseError(f"expected '<=' or '=', found {tok!r}", pos)
    t = p.term()
    p.done()
    return s, tok, t


def parse_an(text: str, symbols: Optional[Dict[str, int]] = None) -> AnnotatedFormula:
    text = text.strip()
    if text == "N":
        return N
    if text[:2] == "L:":
        return L(parse_term(text[2:], symbols))
    if text[:2] == "R:":
        return R(parse_term(text[2:], symbols))
    raise ParseError("annotated formula must be N, L:<term> or R:<term>", 0)


# ---------------------------------------------------------------------------
# terms with node identifiers

class IdTerm:
    __slots__ = ()
    tag: ClassVar[int]
    node_id: int


@dataclass(frozen=True, slots=True)
class VarP(IdTerm):
    index: int
    node_id: int
    tag: ClassVar[int] = VAR


@dataclass(frozen=True, slots=True)
class MeetP(IdTerm):
    l: IdTerm
    r: IdTerm
    node_id: int
    tag: ClassVar[int] = MEET


@dataclass(frozen=True, slots=True)
class JoinP(IdTerm):
    l: IdTerm
    r: IdTerm
    node_id: int
    tag: ClassVar[int] = JOIN


@dataclass(frozen=True, slots=True)
class NotP(IdTerm):
    t: IdTerm
    node_id: int
    tag: ClassVar[int] = NOT


@dataclass(frozen=True, slots=True)
class ZeroP(IdTerm):
    node_id: int
    tag: ClassVar[int] = ZERO_TAG


@dataclass(frozen=True, slots=True)
class OneP(IdTerm):
    node_id: int
    tag: ClassVar[int] = ONE_TAG


def annotate(t: Term, start: int = 1) -> IdTerm:
    """Number every node of ``t`` in depth-first preorder from ``start``.

    Structurally equal subtrees receive distinct identifiers.  To annotate
    several terms in one pass, continue from ``start + term_size(t)``.
    """
    counter = [start]

    def go(u):
        nid = counter[0]
        counter[0] += 1
        tag = u.tag
        if tag == VAR:
            return VarP(u.index, nid)
        if tag == MEET:
            left = go(u.l)
            return MeetP(left, go(u.r), nid)
        if tag == JOIN:
            left = go(u.l)
            return JoinP(left, go(u.r), nid)
        if tag == NOT:
            return NotP(go(u.t), nid)
        if tag == ZERO_TAG:
            return ZeroP(nid)
        return OneP(nid)

    return go(t)


def forget_ids(p: IdTerm) -> Term:
    tag = p.tag
    if tag == VAR:
        return Var(p.index)
    if tag == MEET:
        return Meet(forget_ids(p.l), forget_ids(p.r))
    if tag == JOIN:
        return Join(forget_ids(p.l), forget_ids(p.r))
    if tag == NOT:
        return Not(forget_ids(p.t))
    return ZERO if tag == ZERO_TAG else ONE


def _id_nodes(p: IdTerm) -> Iterator[IdTerm]:
    stack = [p]
    while stack:
        u = stack.pop()
        yield u
        if u.tag == MEET or u.tag == JOIN:
            stack.append(u.r)
            stack.append(u.l)
        elif u.tag == NOT:
            stack.append(u.t)


class InjectivityError(ValueError):
    """Two distinct nodes carry the same identifier."""


def id_table(*roots: IdTerm) -> Dict[int, IdTerm]:
    """Map each node identifier to its subterm (address lookup).

    Raises ``InjectivityError`` when an identifier labels two nodes.
    """
    table: Dict[int, IdTerm] = {}
    for root in roots:
        for u in _id_nodes(root):
            if u.node_id in table:
                raise InjectivityError(f"identifier {u.node_id} is assigned to more than one node")
            table[u.node_id] = u
    return table


@dataclass(frozen=True, slots=True)
class LP:
    node_id: int


@dataclass(frozen=True, slots=True)
class RP:
    node_id: int


class _NoPointer:
    __slots__ = ()

    def __repr__(self):
        return "NP"


NP = _NoPointer()


def an_key(side: int, p: Optional[IdTerm]):
    """Memo key of an annotated identifier term: its side and root id."""
    if side == SIDE_N:
        return NP
    return LP(p.node_id) if side == SIDE_L else RP(p.node_id)
