"""Finite ortholattices and term evaluation.

Two instances ship with the package: ``BOOL`` (the two-element boolean
algebra) and ``O6``, the six-element hexagon, which is not distributive and
therefore separates orthologic from classical logic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .terms import (JOIN, MEET, NOT, VAR, ZERO_TAG, N, SIDE_L, AnnotatedFormula, Term,
                    variables)

__all__ = ["Ortholattice", "BOOL", "O6", "LATTICES", "get_lattice", "UnboundVariable",
           "evaluate", "check_laws", "LawViolation", "leq_semantic", "LeqResult",
           "sequent_holds", "sequent_valid", "valuations"]


class UnboundVariable(KeyError):
    pass


@dataclass(frozen=True)
class Ortholattice:
    """A finite ortholattice given by operation tables over ``range(size)``."""
    name: str
    labels: Tuple[str, ...]
    meet_table: Tuple[Tuple[int, ...], ...]
    join_table: Tuple[Tuple[int, ...], ...]
    neg_table: Tuple[int, ...]
    zero: int
    one: int
    leq_table: Tuple[Tuple[bool, ...], ...] = field(repr=False)
    # valuations are enumerated exhaustively up to this many variables
    exhaustive_vars: int = 4

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def leq(self, x: int, y: int) -> bool:
        return self.leq_table[x][y]

    @classmethod
    def from_order(cls, name, labels, leq, neg, exhaustive_vars=4):
        """Build meet and join tables as greatest lower / least upper bounds."""
        n = len(labels)
        le = tuple(tuple(bool(leq(x, y)) for y in range(n)) for x in range(n))

        def bound(x, y, lower):
            cands = [z for z in range(n) if (le[z][x] and le[z][y] if lower else le[x][z] and le[y][z])]
            best = [z for z in cands if all((le[w][z] if lower else le[z][w]) for w in cands)]
            if len(best) != 1:
                raise ValueError(f"{name}: no unique bound for {labels[x]}, {labels[y]}")
            return best[0]

        meet = tuple(tuple(bound(x, y, True) for y in range(n)) for x in range(n))
        join = tuple(tuple(bound(x, y, False) for y in range(n)) for x in range(n))
        bottom = [z for z in range(n) if all(le[z][w] for w in range(n))][0]
        top = [z for z in range(n) if all(le[w][z] for w in range(n))][0]
        return cls(name, tuple(labels), meet, join, tuple(neg), bottom, top, le, exhaustive_vars)

    def with_neg(self, neg: Sequence[int]) -> "Ortholattice":
        """Same lattice with a different complement (used to build broken instances)."""
        return Ortholattice(self.name + "*", self.labels, self.meet_table, self.join_table,
                            tuple(neg), self.zero, self.one, self.leq_table, self.exhaustive_vars)


BOOL = Ortholattice.from_order("bool", ("0", "1"), lambda x, y: x <= y, (1, 0), exhaustive_vars=7)

# 0 < a < b < 1 and 0 < ~b < ~a < 1, complement pairs (a, ~a) and (b, ~b)
_O6_LABELS = ("0", "a", "b", "~b", "~a", "1")
_O6_COVERS = {(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)}


def _o6_leq(x, y):
    if x == y:
        return True
    frontier = [x]
    while frontier:
        z = frontier.pop()
        for lo, hi in _O6_COVERS:
            if lo == z:
                if hi == y:
                    return True
                frontier.append(hi)
    return False


O6 = Ortholattice.from_order("o6", _O6_LABELS, _o6_leq, (5, 4, 3, 2, 1, 0), exhaustive_vars=4)

LATTICES = {"bool": BOOL, "o6": O6}


def get_lattice(name: str) -> Ortholattice:
    try:
        return LATTICES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown lattice {name!r}; choose from {', '.join(LATTICES)}") from None


def evaluate(t: Term, v: Dict[int, int], ol: Ortholattice) -> int:
    """Homomorphic evaluation of ``t`` under valuation ``v``."""
    tag = t.tag
    if tag == VAR:
        try:
            return v[t.index]
        except KeyError:
            raise UnboundVariable(t.index) from None
    if tag == MEET:
        return ol.meet_table[evaluate(t.l, v, ol)][evaluate(t.r, v, ol)]
    if tag == JOIN:
        return ol.join_table[evaluate(t.l, v, ol)][evaluate(t.r, v, ol)]
    if tag == NOT:
        return ol.neg_table[evaluate(t.t, v, ol)]
    if tag == ZERO_TAG:
        return ol.zero
    return ol.one


# ---------------------------------------------------------------------------
# laws

@dataclass(frozen=True)
class LawViolation:
    law: str
    witness: Tuple[int, ...]

    def describe(self, ol: Ortholattice) -> str:
        names = "xyz"
        vals = ", ".join(f"{names[i]}={ol.labels[w]}" for i, w in enumerate(self.witness))
        return f"{self.law} fails at {vals}"


def _laws(ol: Ortholattice) -> List[Tuple[str, int, Callable[..., bool]]]:
    m, j, n = ol.meet, ol.join, ol.neg
    o, z = ol.one, ol.zero
    return [
        ("V1", 2, lambda x, y: j(x, y) == j(y, x)),
        ("V1'", 2, lambda x, y: m(x, y) == m(y, x)),
        ("V2", 3, lambda x, y, w: j(x, j(y, w)) == j(j(x, y), w)),
        ("V2'", 3, lambda x, y, w: m(x, m(y, w)) == m(m(x, y), w)),
        ("V3", 1, lambda x: j(x, x) == x),
        ("V3'", 1, lambda x: m(x, x) == x),
        ("V4", 1, lambda x: j(x, o) == o),
        ("V4'", 1, lambda x: m(x, z) == z),
        ("V5", 1, lambda x: j(x, z) == x),
        ("V5'", 1, lambda x: m(x, o) == x),
        ("V6", 1, lambda x: n(n(x)) == x),
        ("V7", 1, lambda x: j(x, n(x)) == o),
        ("V7'", 1, lambda x: m(x, n(x)) == z),
        ("V8", 2, lambda x, y: n(j(x, y)) == m(n(x), n(y))),
        ("V8'", 2, lambda x, y: n(m(x, y)) == j(n(x), n(y))),
        ("V9", 2, lambda x, y: j(x, m(x, y)) == x),
        ("V9'", 2, lambda x, y: m(x, j(x, y)) == x),
        ("order", 2, lambda x, y: ol.leq(x, y) == (m(x, y) == x) == (j(x, y) == y)),
    ]


def check_laws(ol: Ortholattice) -> List[LawViolation]:
    """Exhaustively check the ortholattice laws; one violation per failing law."""
    report = []
    for name, arity, law in _laws(ol):
        for args in itertools.product(ol.elements, repeat=arity):
            if not law(*args):
                report.append(LawViolation(name, args))
                break
    return report


# ---------------------------------------------------------------------------
# semantic entailment

def valuations(vs: Sequence[int], ol: Ortholattice, samples: int = 2000, seed: int = 0):
    """All valuations of ``vs`` when few enough, otherwise seeded random samples."""
    if len(vs) <= ol.exhaustive_vars:
        for vals in itertools.product(ol.elements, repeat=len(vs)):
            yield dict(zip(vs, vals))
    else:
        rng = random.Random(seed)
        k = len(ol.labels)
        for _ in range(samples):
            yield {x: rng.randrange(k) for x in vs}


@dataclass(frozen=True)
class LeqResult:
    holds: bool
    witness: Optional[Dict[int, int]]
    exhaustive: bool

    def __bool__(self):
        return self.holds


def leq_semantic(s: Term, t: Term, ol: Ortholattice, samples: int = 2000, seed: int = 0) -> LeqResult:
    """Check ``eval(s) <= eval(t)`` for every (or every sampled) valuation."""
    vs = sorted(set(variables(s)) | set(variables(t)))
    for v in valuations(vs, ol, samples, seed):
        if not ol.leq(evaluate(s, v, ol), evaluate(t, v, ol)):
            return LeqResult(False, v, len(vs) <= ol.exhaustive_vars)
    return LeqResult(True, None, len(vs) <= ol.exhaustive_vars)


def _left_value(a: AnnotatedFormula, v, ol) -> int:
    if a is N:
        return ol.one
    x = evaluate(a.t, v, ol)
    return x if a.side == SIDE_L else ol.neg(x)


def sequent_holds(g: AnnotatedFormula, d: AnnotatedFormula, v: Dict[int, int], ol: Ortholattice) -> bool:
    """Truth of a sequent under one valuation.

    ``L s`` contributes ``s`` as a hypothesis and ``R t`` contributes ``~t``,
    ``N`` contributes ``1``; the sequent ``(g, d)`` holds when
    ``hyp(g) <= ~hyp(d)``.  So ``(L s, R t)`` is ``s <= t``, ``(L s, L t)`` is
    ``s <= ~t``, ``(R s, R t)`` is ``~s <= t`` and ``(L s, N)`` is ``s <= 0``.
    """
    return ol.leq(_left_value(g, v, ol), ol.neg(_left_value(d, v, ol)))


def sequent_valid(g: AnnotatedFormula, d: AnnotatedFormula, ol: Ortholattice,
                  samples: int = 2000, seed: int = 0) -> LeqResult:
    vs = set()
    for a in (g, d):
        if a is not N:
            vs.update(variables(a.t))
    vs = sorted(vs)
    for v in valuations(vs, ol, samples, seed):
        if not sequent_holds(g, d, v, ol):
            return LeqResult(False, v, len(vs) <= ol.exhaustive_vars)
    return LeqResult(True, None, len(vs) <= ol.exhaustive_vars)
