"""Backward proof search for orthologic sequents.

The engines form a ladder:

* ``naive``      every rule in a fixed order, no memo
* ``opti``       commits to invertible rules when one applies
* ``memo-list``  ``opti`` plus an association-list memo
* ``memo-map``   ``opti`` plus an ordered-map memo
* ``ids``        ``memo-map`` keyed on node identifiers (see ``kernel``)

Every engine is fuel bounded (recursion depth) and cuts cycles on the current
search path.  The memoized engines cache results with low-link bookkeeping so
that a "false" caused by an open ancestor is never reused once that ancestor
is closed.
"""

from __future__ import annotations

import os
import sys
import threading
from dataclasses import dataclass
from typing import Callable, Optional

from . import _accel
from ._accel import SeqKey
from .proofs import Proof, Rule
from .store import AssocListStore, OrderedStore
from .terms import (JOIN, MEET, NOT, ONE_TAG, VAR, ZERO_TAG, Join, L, Meet, N, Not, R, SIDE_L, SIDE_R,
                    AnnotatedFormula, Term, compare_sequents, parse_goal,
                    sequent_size)

__all__ = ["ENGINES", "Stats", "Verdict", "VisitLimit", "default_fuel", "decide_naive",
           "decide_opti", "decide_memo", "decide_ids", "decide_sequent", "decide", "decide_terms",
           "MemoEngine", "memomap_correct", "Prover", "prove", "run_deep"]

ENGINES = ("naive", "opti", "memo-list", "memo-map", "ids")

INF = sys.maxsize

# when set, every memoized run re-checks its true entries with the naive engine
DEBUG = bool(os.environ.get("ORTHOLOGIC_DEBUG"))
TRUE = -1


class VisitLimit(RuntimeError):
    """Raised when an engine exceeds its ``max_visits`` budget."""


@dataclass
class Stats:
    node_visits: int = 0
    memo_hits: int = 0
    distinct: int = 0   # sequents inserted into the memo

    def add(self, other: "Stats"):
        self.node_visits += other.node_visits
        self.memo_hits += other.memo_hits
        self.distinct += other.distinct


@dataclass(frozen=True)
class Verdict:
    provable: bool
    stats: Stats

    def __bool__(self):
        return self.provable


def default_fuel(g: AnnotatedFormula, d: AnnotatedFormula) -> int:
    n = sequent_size(g, d)
    return 4 * n * n + 1


def run_deep(fn: Callable, *args, stack_mb: int = 512):
    """Run ``fn`` in a thread with a large C stack so deep searches do not overflow."""
    out = {}

    def target():
        try:
            out["value"] = fn(*args)
        except BaseException as exc:  # re-raised in the caller
            out["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, 1_000_000))
    threading.stack_size(stack_mb * 1024 * 1024)
    try:
        th = threading.Thread(target=target)
        th.start()
        th.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if "error" in out:
        raise out["error"]
    return out["value"]


def _axiom(g, d) -> bool:
    if g.side == SIDE_L:
        t = g.t
        if t.tag == ZERO_TAG:
            return True
        if t.tag == VAR and d.side == SIDE_R and d.t.tag == VAR and d.t.index == t.index:
            return True
    return d.side == SIDE_R and d.t.tag == ONE_TAG


# ---------------------------------------------------------------------------
# naive

class _Naive:
    def __init__(self, max_visits=None):
        self.stats = Stats()
        self.max_visits = max_visits
        self.path = set()

    def go(self, g, d, n):
        """Search ``(g, d)`` with fuel ``n``; sequents on the current path are not re-entered."""
        if n <= 0:
            return False
        # inputs are interned, so subterm identity is structural equality
        key = (g.side, id(g.t), d.side, id(d.t))
        path = self.path
        if key in path:
            return False
        st = self.stats
        st.node_visits += 1
        if self.max_visits is not None and st.node_visits > self.max_visits:
            raise VisitLimit(st.node_visits)
        if _axiom(g, d):
            return True
        path.add(key)
        n -= 1
        go = self.go
        # premises equal to the conclusion (Weaken with d = N, Swap with
        # g = d) are skipped: the loop check would reject them anyway
        if d is N:
            ok = go(g, g, n)                                   # Contract
        else:
            ok = go(g, N, n)                                   # Weaken
        if not ok and g.side == SIDE_L:
            t = g.t
            tag = t.tag
            if tag == MEET:
                ok = go(L(t.l), d, n) or go(L(t.r), d, n)      # LeftAnd1, LeftAnd2
            elif tag == JOIN:
                ok = go(L(t.l), d, n) and go(L(t.r), d, n)
            elif tag == NOT:
                ok = go(R(t.t), d, n)
        if not ok and d.side == SIDE_R:
            t = d.t
            tag = t.tag
            if tag == JOIN:
                ok = go(g, R(t.l), n) or go(g, R(t.r), n)      # RightOr1, RightOr2
            elif tag == MEET:
                ok = go(g, R(t.l), n) and go(g, R(t.r), n)
            elif tag == NOT:
                ok = go(g, L(t.t), n)
        if not ok and (g.side != d.side or g.t is not d.t):
            ok = go(d, g, n)                                   # Swap
        path.discard(key)
        return ok


def intern(t: Term, table: dict) -> Term:
    """Rebuild ``t`` so that equal subterms are one object (shared through ``table``)."""
    hit = table.get(t)
    if hit is not None:
        return hit
    tag = t.tag
    if tag == MEET:
        u = Meet(intern(t.l, table), intern(t.r, table))
    elif tag == JOIN:
        u = Join(intern(t.l, table), intern(t.r, table))
    elif tag == NOT:
        u = Not(intern(t.t, table))
    else:
        u = t
    table[u] = u
    return u


def _intern_an(a, table):
    if a is N:
        return a
    return L(intern(a.t, table)) if a.side == SIDE_L else R(intern(a.t, table))


def decide_naive(g, d, fuel: Optional[int] = None, stats: Optional[Stats] = None,
                 max_visits: Optional[int] = None, backend: Optional[str] = None) -> bool:
    """Backtracking search in rule-listing order, no memo.

    ``backend`` is ``"compiled"`` or ``"python"``; by default the compiled
    search is used when it is built.
    """
    from . import kernel
    if fuel is None:
        fuel = default_fuel(g, d)
    if backend is None:
        backend = kernel.DEFAULT_BACKEND
    if backend == "compiled":
        if "compiled" not in kernel.BACKENDS:
            raise ValueError("compiled kernel is not available")
        ok, visits = kernel.naive_compiled(g, d, fuel, max_visits)
        if stats is not None:
            stats.node_visits += visits
        if ok is None:
            raise VisitLimit(visits)
        return ok
    eng = _Naive(max_visits)
    table = {}
    g, d = _intern_an(g, table), _intern_an(d, table)
    try:
        return eng.go(g, d, fuel)
    finally:
        if stats is not None:
            stats.add(eng.stats)


# ---------------------------------------------------------------------------
# invertible-first strategy, shared by opti and the memo engines
#
# ``_plan`` returns how a sequent is handled:
#   ("axiom", rule, swapped)            closed by an axiom
#   ("and", rule, premises, swapped)    an invertible rule; every premise needed
#   ("or", alternatives)                non-invertible fallback; each alternative
#                                       is (rule, premise)

def _invertible(g, d):
    """Invertible rule on ``g`` as first component, premises in canonical orientation."""
    if g.side == SIDE_L:
        t = g.t
        if t.tag == JOIN:
            return Rule.LEFT_OR, ((L(t.l), d), (L(t.r), d))
        if t.tag == NOT:
            return Rule.LEFT_NOT, ((R(t.t), d),)
    return None


def _invertible_right(g, d):
    if d.side == SIDE_R:
        t = d.t
        if t.tag == MEET:
            return Rule.RIGHT_AND, ((g, R(t.l)), (g, R(t.r)))
        if t.tag == NOT:
            return Rule.RIGHT_NOT, ((g, L(t.t)),)
    return None


def _axiom_rule(g, d):
    if g.side == SIDE_L:
        t = g.t
        if t.tag == VAR and d.side == SIDE_R and d.t.tag == VAR and d.t.index == t.index:
            return Rule.HYP
        if t.tag == ZERO_TAG:
            return Rule.LEFT_ZERO
    if d.side == SIDE_R and d.t.tag == ONE_TAG:
        return Rule.RIGHT_ONE
    return None


def _plan(g, d):
    r = _axiom_rule(g, d)
    if r is not None:
        return ("axiom", r, False)
    r = _axiom_rule(d, g)
    if r is not None:
        return ("axiom", r, True)
    inv = _invertible(g, d)
    if inv is not None:
        return ("and", inv[0], inv[1], False)
    inv = _invertible_right(d, g)
    if inv is not None:
        return ("and", inv[0], inv[1], True)
    inv = _invertible_right(g, d)
    if inv is not None:
        return ("and", inv[0], inv[1], False)
    inv = _invertible(d, g)
    if inv is not None:
        return ("and", inv[0], inv[1], True)
    alts = []
    if d is not N:
        alts.append((Rule.WEAKEN, (g, N)))
    elif g is not N:
        alts.append((Rule.CONTRACT, (g, g)))
    if g.side == SIDE_L and g.t.tag == MEET:
        alts.append((Rule.LEFT_AND1, (L(g.t.l), d)))
        alts.append((Rule.LEFT_AND2, (L(g.t.r), d)))
    if d.side == SIDE_R and d.t.tag == JOIN:
        alts.append((Rule.RIGHT_OR1, (g, R(d.t.l))))
        alts.append((Rule.RIGHT_OR2, (g, R(d.t.r))))
    if g != d:
        alts.append((Rule.SWAP, (d, g)))
    return ("or", alts)


class _Opti:
    def __init__(self, max_visits=None):
        self.stats = Stats()
        self.max_visits = max_visits
        self.path = set()

    def go(self, g, d, fuel):
        if fuel <= 0:
            return False
        key = (g, d)
        if key in self.path:
            return False
        st = self.stats
        st.node_visits += 1
        if self.max_visits is not None and st.node_visits > self.max_visits:
            raise VisitLimit(st.node_visits)
        plan = _plan(g, d)
        if plan[0] == "axiom":
            return True
        self.path.add(key)
        try:
            n = fuel - 1
            if plan[0] == "and":
                return all(self.go(p, q, n) for p, q in plan[2])
            return any(self.go(p, q, n) for _, (p, q) in plan[1])
        finally:
            self.path.discard(key)


def decide_opti(g, d, fuel: Optional[int] = None, stats: Optional[Stats] = None,
                max_visits: Optional[int] = None) -> bool:
    eng = _Opti(max_visits)
    try:
        return eng.go(g, d, default_fuel(g, d) if fuel is None else fuel)
    finally:
        if stats is not None:
            stats.add(eng.stats)


# ---------------------------------------------------------------------------
# memoized search

class MemoEngine:
    """Invertible-first search with a persistent memo store.

    Cell values: ``True`` (or a ``Proof`` in certificate mode), ``False``
    (final), or an int ``k >= 0``: in progress or provisionally false,
    depending on the open search frame at depth ``k``.
    """

    def __init__(self, backend: str = "map", certify: bool = False, max_visits=None):
        if backend == "list":
            self.store = AssocListStore(compare_sequents, _accel.assoc_index)
            self._key = lambda g, d: (g, d)
        elif backend == "map":
            self.store = OrderedStore()
            self._key = lambda g, d: SeqKey((g, d))
        else:
            raise ValueError(f"unknown memo backend {backend!r}")
        self.backend = backend
        self.certify = certify
        self.max_visits = max_visits
        self.stats = Stats()
        self._pending = []
        self._proof = None
        self._fuel = 0

    def decide(self, g, d, fuel: Optional[int] = None) -> bool:
        self._fuel = default_fuel(g, d) if fuel is None else fuel
        self._proof = None
        r = self._go(g, d, 0)
        assert not self._pending
        return r < 0

    def proof(self) -> Optional[Proof]:
        """Certificate for the last successful ``decide`` (certificate mode only)."""
        return self._proof

    def _go(self, g, d, depth):
        # store values are cells [value, key] mutated in place, so each visit
        # searches the store once
        store = self.store
        key = self._key(g, d)
        cell = store.get(key)
        st = self.stats
        if cell is not None:
            st.memo_hits += 1
            v = cell[0]
            if v is False:
                return INF
            if type(v) is int:
                return v
            if self.certify:
                self._proof = v
            return TRUE
        if depth >= self._fuel:
            return INF
        st.node_visits += 1
        if self.max_visits is not None and st.node_visits > self.max_visits:
            raise VisitLimit(st.node_visits)
        st.distinct += 1
        cell = [depth, key]
        store.set(key, cell)
        pending = self._pending
        mark = len(pending)
        r = self._expand(g, d, depth + 1)
        if r < 0:
            cell[0] = self._proof if self.certify else True
            for c in pending[mark:]:
                store.delete(c[1])
            del pending[mark:]
            return TRUE
        if r >= depth:
            cell[0] = False
            for c in pending[mark:]:
                c[0] = False
            del pending[mark:]
            return INF
        cell[0] = r
        pending.append(cell)
        return r

    def _expand(self, g, d, depth):
        plan = _plan(g, d)
        cert = self.certify
        kind = plan[0]
        if kind == "axiom":
            if cert:
                _, rule, swapped = plan
                p = Proof(rule, (d, g) if swapped else (g, d))
                self._proof = Proof(Rule.SWAP, (g, d), (p,)) if swapped else p
            return TRUE
        if kind == "and":
            _, rule, prems, swapped = plan
            subs = []
            low = INF
            for p, q in prems:
                r = self._go(p, q, depth)
                if r >= 0:
                    return r
                if cert:
                    subs.append(self._proof)
            if cert:
                node = Proof(rule, (d, g) if swapped else (g, d), tuple(subs))
                self._proof = Proof(Rule.SWAP, (g, d), (node,)) if swapped else node
            return TRUE
        low = INF
        for rule, (p, q) in plan[1]:
            r = self._go(p, q, depth)
            if r < 0:
                if cert:
                    self._proof = Proof(rule, (g, d), (self._proof,))
                return TRUE
            if r < low:
                low = r
        return low


def memomap_correct(engine: MemoEngine, oracle=None) -> bool:
    """Every true entry of ``engine``'s store is confirmed by ``oracle`` (default: naive search)."""
    oracle = oracle or decide_naive
    for key, cell in engine.store.items():
        g, d = key if isinstance(key, tuple) else key.seq
        v = cell[0]
        if v is not False and type(v) is not int and not oracle(g, d):
            return False
    return True


def decide_memo(g, d, fuel: Optional[int] = None, backend: str = "map",
                stats: Optional[Stats] = None, engine: Optional[MemoEngine] = None) -> bool:
    eng = engine if engine is not None else MemoEngine(backend)
    before = Stats(eng.stats.node_visits, eng.stats.memo_hits, eng.stats.distinct)
    try:
        ok = eng.decide(g, d, fuel)
        if DEBUG and not memomap_correct(eng):
            raise AssertionError("memo store holds a true entry the naive engine rejects")
        return ok
    finally:
        if stats is not None:
            stats.node_visits += eng.stats.node_visits - before.node_visits
            stats.memo_hits += eng.stats.memo_hits - before.memo_hits
            stats.distinct += eng.stats.distinct - before.distinct


def decide_ids(g, d, fuel: Optional[int] = None, stats: Optional[Stats] = None,
               backend: Optional[str] = None) -> bool:
    from . import kernel
    return kernel.decide_annotated(g, d, fuel, stats, backend)


# inputs above this size are searched on a thread with a large stack
DEEP_SIZE = 40


def decide_sequent(g, d, engine: str = "ids", fuel: Optional[int] = None,
                   stats: Optional[Stats] = None) -> bool:
    if sequent_size(g, d) > DEEP_SIZE and threading.current_thread() is threading.main_thread():
        return run_deep(_decide_sequent, g, d, engine, fuel, stats)
    return _decide_sequent(g, d, engine, fuel, stats)


def _decide_sequent(g, d, engine, fuel, stats):
    if engine == "naive":
        return decide_naive(g, d, fuel, stats)
    if engine == "opti":
        return decide_opti(g, d, fuel, stats)
    if engine == "memo-list":
        return decide_memo(g, d, fuel, "list", stats)
    if engine == "memo-map":
        return decide_memo(g, d, fuel, "map", stats)
    if engine == "ids":
        return decide_ids(g, d, fuel, stats)
    raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")


def decide_terms(s: Term, t: Term, op: str = "<=", engine: str = "ids",
                 fuel: Optional[int] = None) -> Verdict:
    stats = Stats()
    ok = decide_sequent(L(s), R(t), engine, fuel, stats)
    if ok and op == "=":
        ok = decide_sequent(L(t), R(s), engine, fuel, stats)
    return Verdict(ok, stats)


def decide(goal, engine: str = "ids", fuel: Optional[int] = None) -> Verdict:
    """Decide ``"s <= t"`` or ``"s = t"`` (text or a parsed ``(s, op, t)`` triple)."""
    if isinstance(goal, str):
        goal = parse_goal(goal)
    s, op, t = goal
    return decide_terms(s, t, op, engine, fuel)


# ---------------------------------------------------------------------------
# certificates

class Prover:
    """Proof-producing search; the memo (and cached subproofs) persist across calls."""

    def __init__(self):
        self.engine = MemoEngine("map", certify=True)

    @property
    def stats(self) -> Stats:
        return self.engine.stats

    def prove(self, g: AnnotatedFormula, d: AnnotatedFormula, fuel: Optional[int] = None) -> Optional[Proof]:
        if sequent_size(g, d) > DEEP_SIZE and threading.current_thread() is threading.main_thread():
            ok = run_deep(self.engine.decide, g, d, fuel)
        else:
            ok = self.engine.decide(g, d, fuel)
        if ok:
            return self.engine.proof()
        return None

    def prove_leq(self, s: Term, t: Term) -> Optional[Proof]:
        return self.prove(L(s), R(t))


def prove(g: AnnotatedFormula, d: AnnotatedFormula, fuel: Optional[int] = None) -> Optional[Proof]:
    return Prover().prove(g, d, fuel)
