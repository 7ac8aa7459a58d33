"""Cut elimination.

``eliminate_one_cut`` removes a single cut between two cut-free proofs.  It
works with a multi-occurrence cut: ``mix(b, A, ma, B, mb)`` cuts every
occurrence of ``R b`` in ``A``'s conclusion at the positions in ``ma``
against every occurrence of ``L b`` in ``B``'s conclusion at the positions
in ``mb``.  Tracking both positions is what makes Contract harmless: a
contraction on the cut formula just widens the mask.

Each recursive call strictly decreases ``(size of b, size A + size B)``
lexicographically; the measure is checked at runtime.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .proofs import Proof, Rule, check_proof, is_cut_free
from .terms import N, R, L, Sequent, Term, term_size

__all__ = ["CutElimError", "eliminate_one_cut", "eliminate_cuts", "CutEliminator"]

BOTH = frozenset((0, 1))
FIRST = frozenset((0,))
SECOND = frozenset((1,))

LEFT_RULES = {Rule.LEFT_AND1, Rule.LEFT_AND2, Rule.LEFT_OR, Rule.LEFT_NOT}
RIGHT_RULES = {Rule.RIGHT_AND, Rule.RIGHT_OR1, Rule.RIGHT_OR2, Rule.RIGHT_NOT}


class CutElimError(RuntimeError):
    """Internal invariant violated (a bug, not a user error)."""


def _flip(m):
    return frozenset(1 - i for i in m)


def _rest(seq: Sequent, m) -> object:
    if len(m) == 2:
        return N
    (i,) = m
    return seq[1 - i]


def swap(p: Proof) -> Proof:
    if p.rule is Rule.SWAP:
        return p.premises[0]
    g, d = p.conclusion
    return Proof(Rule.SWAP, (d, g), (p,))


def orient(p: Proof, target: Sequent) -> Proof:
    if p.conclusion == target:
        return p
    if (p.conclusion[1], p.conclusion[0]) == target:
        return swap(p)
    raise CutElimError(f"cannot orient {p.conclusion} to {target}")


def weaken(p: Proof, d) -> Proof:
    """From ``(g, N)`` conclude ``(g, d)``."""
    if d is N:
        return p
    return Proof(Rule.WEAKEN, (p.conclusion[0], d), (p,))


def contract(p: Proof) -> Proof:
    g = p.conclusion[0]
    return Proof(Rule.CONTRACT, (g, N), (p,))


def _apply(rule: Rule, prems: List[Proof], principal) -> Proof:
    """Apply a logical rule whose premises are already in canonical orientation."""
    g, d = prems[0].conclusion
    if rule in LEFT_RULES:
        return Proof(rule, (principal, d), tuple(prems))
    return Proof(rule, (g, principal), tuple(prems))


class CutEliminator:
    """Holds the size cache and the optional measure trace."""

    def __init__(self, trace: bool = False):
        self._sizes: Dict[int, Tuple[int, Proof]] = {}
        # (measure, parent measure) per call; parent is None at the root
        self.trace: Optional[List[tuple]] = [] if trace else None
        self.calls = 0

    def size(self, p: Proof) -> int:
        hit = self._sizes.get(id(p))
        if hit is not None and hit[1] is p:
            return hit[0]
        stack = [p]
        while stack:
            q = stack[-1]
            h = self._sizes.get(id(q))
            if h is not None and h[1] is q:
                stack.pop()
                continue
            missing = [s for s in q.premises
                       if (self._sizes.get(id(s)) or (0, None))[1] is not s]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            self._sizes[id(q)] = (1 + sum(self._sizes[id(s)][0] for s in q.premises), q)
        return self._sizes[id(p)][0]

    # -- entry point ------------------------------------------------------

    def cut(self, b: Term, A: Proof, B: Proof) -> Proof:
        """Cut-free proof of ``(G, D)`` from ``A : (G, R b)`` and ``B : (L b, D)``."""
        if A.conclusion[1] != R(b) or B.conclusion[0] != L(b):
            raise ValueError("cut premises must conclude (G, R b) and (L b, D)")
        return self.mix(b, A, SECOND, B, FIRST, None)

    # -- the generalized cut ----------------------------------------------

    def mix(self, b: Term, A: Proof, ma, B: Proof, mb, parent) -> Proof:
        measure = (term_size(b), self.size(A) + self.size(B))
        if parent is not None and not measure < parent:
            raise CutElimError(f"measure did not decrease: {measure} >= {parent}")
        self.calls += 1
        if self.trace is not None:
            self.trace.append((measure, parent))
        rb, lb = R(b), L(b)
        for i in ma:
            if A.conclusion[i] != rb:
                raise CutElimError("left mask does not point at R b")
        for i in mb:
            if B.conclusion[i] != lb:
                raise CutElimError("right mask does not point at L b")
        target = (_rest(A.conclusion, ma), _rest(B.conclusion, mb))
        out = self._on_left(b, A, ma, B, mb, target, measure)
        if out.conclusion != target:
            raise CutElimError(f"reduct concludes {out.conclusion}, expected {target}")
        return out

    def _on_left(self, b, A, ma, B, mb, target, measure):
        rule = A.rule
        a0, a1 = A.conclusion
        rest_b = target[1]
        if rule is Rule.SWAP:
            return self.mix(b, A.premises[0], _flip(ma), B, mb, measure)
        if rule is Rule.CONTRACT:
            return self.mix(b, A.premises[0], BOTH, B, mb, measure)
        if rule is Rule.WEAKEN:
            A1 = A.premises[0]
            if ma == SECOND:
                # the cut formula was introduced by Weaken: B is not needed
                return weaken(A1, rest_b)
            sub = self.mix(b, A1, FIRST, B, mb, measure)      # (N, rest_b)
            if ma == BOTH:
                return sub
            return swap(weaken(swap(sub), a1))
        if rule is Rule.LEFT_ZERO:
            # the principal L 0 is never the cut formula
            return Proof(Rule.LEFT_ZERO, target)
        if rule is Rule.RIGHT_ONE and 1 not in ma:
            return orient(Proof(Rule.RIGHT_ONE, (rest_b, a1)), target)
        if rule is Rule.HYP:
            # A = (L x, R x) with R x cut: the result is B with L x kept
            if mb == BOTH:
                return contract(B)
            return orient(B, target)
        if rule in LEFT_RULES or (rule in RIGHT_RULES and 1 not in ma):
            # principal formula untouched by the cut: push the cut into the premises
            p = 0 if rule in LEFT_RULES else 1
            q = 1 - p
            subs = []
            for A_i in A.premises:
                s = self.mix(b, A_i, frozenset((q,)), B, mb, measure)   # (active_i, rest_b)
                subs.append(s if p == 0 else swap(s))
            res = _apply(rule, subs, A.conclusion[p])
            return orient(res, target)
        if rule in RIGHT_RULES or rule is Rule.RIGHT_ONE:
            return self._on_right(b, A, ma, B, mb, target, measure)
        raise CutElimError(f"unexpected rule {rule} in a cut-free proof")

    def _on_right(self, b, A, ma, B, mb, target, measure):
        """``A`` ends in a right rule whose principal formula is the cut formula."""
        rule = B.rule
        c0, c1 = B.conclusion
        rest_a = target[0]
        if rule is Rule.SWAP:
            return self.mix(b, A, ma, B.premises[0], _flip(mb), measure)
        if rule is Rule.CONTRACT:
            return self.mix(b, A, ma, B.premises[0], BOTH, measure)
        if rule is Rule.WEAKEN:
            B1 = B.premises[0]
            if mb == SECOND:
                return swap(weaken(B1, rest_a))
            sub = self.mix(b, A, ma, B1, FIRST, measure)      # (rest_a, N)
            if mb == BOTH:
                return sub
            return weaken(sub, c1)
        if rule is Rule.HYP:
            # B = (L x, R x) with L x cut: the result is A with R x kept
            if ma == BOTH:
                return swap(contract(A))
            return orient(A, target)
        if rule is Rule.RIGHT_ONE:
            return Proof(Rule.RIGHT_ONE, target)
        if rule is Rule.LEFT_ZERO:
            if 0 in mb:
                raise CutElimError("R 0 cannot be principal on the left of a cut")
            return swap(Proof(Rule.LEFT_ZERO, (c0, rest_a)))
        if rule in RIGHT_RULES or (rule in LEFT_RULES and 0 not in mb):
            p = 0 if rule in LEFT_RULES else 1
            q = 1 - p
            subs = []
            for B_j in B.premises:
                s = self.mix(b, A, ma, B_j, frozenset((q,)), measure)   # (rest_a, active_j)
                subs.append(swap(s) if p == 0 else s)
            res = _apply(rule, subs, B.conclusion[p])
            return orient(res, target)
        if rule in LEFT_RULES:
            return self._principal(b, A, ma, B, mb, target, measure)
        raise CutElimError(f"unexpected rule {rule} in a cut-free proof")

    def _principal(self, b, A, ma, B, mb, target, measure):
        """Both last rules introduce the cut formula."""
        ra, rb = A.rule, B.rule
        rest_a, rest_b = target

        def a_side(i):
            # proof with R/L subformula tracked, and the leftover formula
            A_i = A.premises[i]
            if ma == BOTH:
                s = self.mix(b, A_i, FIRST, B, mb, measure)       # (active_i, rest_b)
                return s, FIRST
            return A_i, SECOND

        def b_side(j):
            B_j = B.premises[j]
            if mb == BOTH:
                s = self.mix(b, A, ma, B_j, SECOND, measure)      # (rest_a, active_j)
                return s, SECOND
            return B_j, FIRST

        if ra is Rule.RIGHT_AND and rb in (Rule.LEFT_AND1, Rule.LEFT_AND2):
            k = 0 if rb is Rule.LEFT_AND1 else 1
            sub = b.l if k == 0 else b.r
            (P, mp), (Q, mq) = a_side(k), b_side(0)
            res = self.mix(sub, P, mp, Q, mq, measure)
        elif rb is Rule.LEFT_OR and ra in (Rule.RIGHT_OR1, Rule.RIGHT_OR2):
            k = 0 if ra is Rule.RIGHT_OR1 else 1
            sub = b.l if k == 0 else b.r
            (P, mp), (Q, mq) = a_side(0), b_side(k)
            res = self.mix(sub, P, mp, Q, mq, measure)
        elif ra is Rule.RIGHT_NOT and rb is Rule.LEFT_NOT:
            # A side carries L a, B side carries R a: roles exchange
            (P, mp), (Q, mq) = a_side(0), b_side(0)
            res = swap(self.mix(b.t, Q, mq, P, mp, measure))
        else:
            raise CutElimError(f"impossible principal pair {ra} / {rb}")
        # res concludes (leftover of A side, leftover of B side)
        g, d = res.conclusion
        if g == d and target != res.conclusion:
            res = contract(res)
        return orient(res, target)


def eliminate_one_cut(b: Term, A: Proof, B: Proof, trace: Optional[list] = None) -> Proof:
    """Cut-free proof of ``(G, D)`` from cut-free ``A : (G, R b)`` and ``B : (L b, D)``."""
    for p in (A, B):
        check_proof(p)
        if not is_cut_free(p):
            raise ValueError("eliminate_one_cut expects cut-free premises")
    el = CutEliminator(trace is not None)
    out = _deep(el.cut, b, A, B)
    if trace is not None:
        trace.extend(el.trace)
    return out


def eliminate_cuts(p: Proof, trace: Optional[list] = None) -> Proof:
    """Cut-free proof with the same conclusion as ``p`` (topmost cuts first)."""
    check_proof(p)
    el = CutEliminator(trace is not None)
    out = _deep(_eliminate, el, p)
    if trace is not None:
        trace.extend(el.trace)
    return out


def _eliminate(el: CutEliminator, p: Proof) -> Proof:
    done: Dict[int, Tuple[Proof, Proof]] = {}
    stack = [(p, False)]
    while stack:
        q, ready = stack.pop()
        if id(q) in done:
            continue
        if not ready:
            stack.append((q, True))
            stack.extend((s, False) for s in q.premises if id(s) not in done)
            continue
        prems = tuple(done[id(s)][1] for s in q.premises)
        if q.rule is Rule.CUT:
            new = el.cut(q.cut_formula, prems[0], prems[1])
        elif prems == q.premises:
            new = q
        else:
            new = Proof(q.rule, q.conclusion, prems)
        done[id(q)] = (q, new)
    return done[id(p)][1]


def _deep(fn, *args):
    from .search import run_deep
    import threading
    if threading.current_thread() is threading.main_thread():
        return run_deep(fn, *args)
    return fn(*args)
