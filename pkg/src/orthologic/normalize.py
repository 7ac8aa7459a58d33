"""Orthologic simplifier.

Terms are brought to an n-ary negation normal form, simplified bottom-up
with the lattice laws and with decision-procedure queries (absorption between
siblings, collapse to a constant), and printed back with the cheapest
placement of negations.

Internal nodes are tuples:

    ("v", index, positive)   literal
    ("0",) / ("1",)          constants
    ("&", children)          n-ary meet, children a sorted tuple
    ("|", children)          n-ary join
"""

from __future__ import annotations

import functools
from typing import Tuple

from .proofs import Proof
from .search import Prover, decide_terms
from .terms import (MEET, NOT, ONE, ONE_TAG, VAR, ZERO, ZERO_TAG, Join, L, Meet, Not, R, Term, Var,
                    compare_terms)

__all__ = ["normalize", "normalize_certified", "NormalizeError", "Normalizer"]

Z = ("0",)
O = ("1",)


class NormalizeError(RuntimeError):
    pass


def to_nnf(t: Term, positive: bool = True):
    """n-ary NNF node of ``t`` (or of ``~t`` when ``positive`` is false), flattened."""
    tag = t.tag
    if tag == VAR:
        return ("v", t.index, positive)
    if tag == NOT:
        return to_nnf(t.t, not positive)
    if tag == ZERO_TAG:
        return Z if positive else O
    if tag == ONE_TAG:
        return O if positive else Z
    op = "&" if (tag == MEET) == positive else "|"
    kids = []
    for c in (t.l, t.r):
        n = to_nnf(c, positive)
        if n[0] == op:
            kids.extend(n[1])
        else:
            kids.append(n)
    return (op, tuple(kids))


def dual(x):
    k = x[0]
    if k == "v":
        return ("v", x[1], not x[2])
    if k == "0":
        return O
    if k == "1":
        return Z
    return ("|" if k == "&" else "&", tuple(dual(c) for c in x[1]))


def plain_term(x) -> Term:
    """NNF node as a term, right-nested, negations on variables only."""
    k = x[0]
    if k == "v":
        return Var(x[1]) if x[2] else Not(Var(x[1]))
    if k == "0":
        return ZERO
    if k == "1":
        return ONE
    mk = Meet if k == "&" else Join
    kids = [plain_term(c) for c in x[1]]
    out = kids[-1]
    for c in reversed(kids[:-1]):
        out = mk(c, out)
    return out


def _node_cmp(a, b):
    return compare_terms(plain_term(a), plain_term(b))


_sort_key = functools.cmp_to_key(_node_cmp)


# ---------------------------------------------------------------------------
# size-minimal rendering
#
# cost(x) is the size of the smallest term render(x) can produce for x.  A
# meet may print a group S of its children as ~(d1 | ... | dm) where each
# di renders the dual of a child; a whole node may print as ~render(dual x).

@functools.lru_cache(maxsize=None)
def _direct(x) -> int:
    k = x[0]
    if k == "v":
        return 1 if x[2] else 2
    if k in ("0", "1"):
        return 1
    kids = x[1]
    total = sum(cost(c) for c in kids) + len(kids) - 1
    gain = sum(max(0, cost(c) - cost(dual(c))) for c in kids)
    return total + min(0, 1 - gain)


@functools.lru_cache(maxsize=None)
def cost(x) -> int:
    if x[0] in ("&", "|"):
        return min(_direct(x), 1 + _direct(dual(x)))
    return _direct(x)


def _chain(mk, kids):
    out = kids[-1]
    for c in reversed(kids[:-1]):
        out = mk(c, out)
    return out


def render(x) -> Term:
    k = x[0]
    if k not in ("&", "|"):
        return plain_term(x)
    if 1 + _direct(dual(x)) < _direct(x):
        return Not(_render_direct(dual(x)))
    return _render_direct(x)


def _render_direct(x) -> Term:
    mk, mk_dual = (Meet, Join) if x[0] == "&" else (Join, Meet)
    kids = x[1]
    gains = [cost(c) - cost(dual(c)) for c in kids]
    if sum(g for g in gains if g > 0) > 1:
        plain = [render(c) for c, g in zip(kids, gains) if g <= 0]
        group = Not(_chain(mk_dual, [render(dual(c)) for c, g in zip(kids, gains) if g > 0]))
        return _chain(mk, plain + [group])
    return _chain(mk, [render(c) for c in kids])


# ---------------------------------------------------------------------------
# simplification

class Normalizer:
    """One normalization session; ``queries`` counts decision-procedure calls."""

    def __init__(self, engine: str = "ids"):
        self.engine = engine
        self.queries = 0
        self._leq_cache = {}
        self._simp_cache = {}

    def leq(self, a, b) -> bool:
        key = (a, b)
        hit = self._leq_cache.get(key)
        if hit is None:
            self.queries += 1
            hit = decide_terms(plain_term(a), plain_term(b), "<=", self.engine).provable
            self._leq_cache[key] = hit
        return hit

    def simplify(self, x):
        hit = self._simp_cache.get(x)
        if hit is None:
            hit = self._simplify(x)
            self._simp_cache[x] = hit
            self._simp_cache[hit] = hit
        return hit

    def _simplify(self, x):
        k = x[0]
        if k not in ("&", "|"):
            return x
        unit, absorbing = (O, Z) if k == "&" else (Z, O)
        kids = []
        for c in x[1]:
            c = self.simplify(c)
            if c[0] == k:
                kids.extend(c[1])
            else:
                kids.append(c)
        while True:
            if absorbing in kids:
                return absorbing
            kids = sorted(set(c for c in kids if c != unit), key=_sort_key)
            if not kids:
                return unit
            if len(kids) == 1:
                return kids[0]
            # drop a child implied by a sibling: in a join a <= b drops a,
            # in a meet b <= a drops a
            drop = None
            for i, a in enumerate(kids):
                for j, b in enumerate(kids):
                    if i == j or (a[0] == "v" and b[0] == "v"):
                        continue
                    if (self.leq(a, b) if k == "|" else self.leq(b, a)):
                        drop = i
                        break
                if drop is not None:
                    break
            if drop is not None:
                del kids[drop]
                continue
            node = (k, tuple(kids))
            if k == "&" and self.leq(node, Z):
                return Z
            if k == "|" and self.leq(O, node):
                return O
            return node

    def normalize(self, t: Term) -> Term:
        return render(self.simplify(to_nnf(t)))


def normalize(t: Term, engine: str = "ids") -> Term:
    """OL-equivalent term, no larger than ``t``, with canonical argument order."""
    return Normalizer(engine).normalize(t)


def normalize_certified(t: Term) -> Tuple[Term, Proof, Proof]:
    """``normalize(t)`` with cut-free proofs of ``t <= r`` and ``r <= t``."""
    r = normalize(t)
    pv = Prover()
    p1 = pv.prove(L(t), R(r))
    p2 = pv.prove(L(r), R(t))
    if p1 is None or p2 is None:
        raise NormalizeError("normal form is not provably equivalent to its source")
    return r, p1, p2
