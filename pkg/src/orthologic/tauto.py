"""Boolean validity by branching on variables and normalizing in orthologic.

Every orthologic identity is a boolean identity, so normalization is a sound
simplification between branches; branching on all variables makes the
procedure complete for classical validity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from .normalize import Normalizer
from .semantics import BOOL, evaluate
from .terms import JOIN, MEET, NOT, ONE, VAR, ZERO, Join, Meet, Not, Term, variables

__all__ = ["TautoResult", "TautoStats", "substitute", "tauto", "tauto_eq", "iff"]


@dataclass(frozen=True)
class TautoResult:
    valid: bool
    counterexample: Optional[Dict[int, int]] = None

    def __bool__(self):
        return self.valid


@dataclass
class TautoStats:
    branches: int = 0  # search nodes
    leaves: int = 0  # closed branches
    normalizations: int = 0
    queries: int = 0


def substitute(t: Term, x: int, c: Term) -> Term:
    """Replace every ``Var x`` in ``t`` by the constant ``c``."""
    tag = t.tag
    if tag == VAR:
        return c if t.index == x else t
    if tag == MEET:
        l, r = substitute(t.l, x, c), substitute(t.r, x, c)
        return t if (l is t.l and r is t.r) else Meet(l, r)
    if tag == JOIN:
        l, r = substitute(t.l, x, c), substitute(t.r, x, c)
        return t if (l is t.l and r is t.r) else Join(l, r)
    if tag == NOT:
        s = substitute(t.t, x, c)
        return t if s is t.t else Not(s)
    return t


def occurrences(t: Term) -> Counter:
    counts: Counter = Counter()
    stack = [t]
    while stack:
        u = stack.pop()
        tag = u.tag
        if tag == VAR:
            counts[u.index] += 1
        elif tag == MEET or tag == JOIN:
            stack.append(u.l)
            stack.append(u.r)
        elif tag == NOT:
            stack.append(u.t)
    return counts


def _pick(t: Term) -> int:
    """Most frequent variable, smallest index on ties."""
    counts = occurrences(t)
    return min(counts, key=lambda v: (-counts[v], v))


def tauto(t: Term, simplify: bool = True, stats: Optional[TautoStats] = None,
          deadline: Optional[Callable[[], bool]] = None) -> TautoResult:
    """Decide boolean validity of ``t``.

    With ``simplify=False`` normalization is replaced by the identity (used
    to measure what normalization saves).  ``deadline`` is polled between
    branches and raises ``TimeoutError`` when it returns true.
    """
    st = stats if stats is not None else TautoStats()
    norm = Normalizer()
    all_vars = sorted(set(variables(t)))

    def simp(u):
        if not simplify:
            return u
        st.normalizations += 1
        return norm.normalize(u)

    def go(u, assignment):
        if deadline is not None and deadline():
            raise TimeoutError("tauto deadline exceeded")
        st.branches += 1
        u = simp(u)
        vs = variables(u)
        if not vs:
            st.leaves += 1
            if evaluate(u, {}, BOOL) == BOOL.one:
                return None
            return assignment
        x = _pick(u)
        for value, const in ((1, ONE), (0, ZERO)):
            bad = go(substitute(u, x, const), {**assignment, x: value})
            if bad is not None:
                return bad
        return None

    bad = go(t, {})
    st.queries += norm.queries
    if bad is None:
        return TautoResult(True)
    return TautoResult(False, {v: bad.get(v, 0) for v in all_vars})


def iff(s: Term, t: Term) -> Term:
    return Join(Meet(s, t), Meet(Not(s), Not(t)))


def tauto_eq(s: Term, t: Term, **kw) -> TautoResult:
    """Boolean validity of ``s = t``."""
    return tauto(iff(s, t), **kw)
