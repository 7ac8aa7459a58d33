# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled identifier-keyed search kernel (same algorithm as ``_kernel_py``)."""

from libcpp.map cimport map as cmap
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector
from libc.stdint cimport int64_t
from cython.operator cimport dereference as deref

BACKEND = "compiled"

cdef int64_t INF = 1LL << 62

# tags, kept in sync with terms.py
cdef enum:
    VAR = 0
    MEET = 1
    JOIN = 2
    NOT = 3
    ZERO_TAG = 4
    ONE_TAG = 5


cdef class _Search:
    cdef vector[int] kind, left, right, var
    cdef cmap[int64_t, int64_t] store
    cdef vector[int64_t] pending
    cdef int64_t M, fuel
    cdef public int64_t visits, hits

    cdef bint axiom(self, int64_t g, int64_t d):
        cdef int k
        if g != 0 and (g & 1) == 0:
            k = self.kind[g >> 1]
            if k == ZERO_TAG:
                return True
            if k == VAR and (d & 1) and self.kind[d >> 1] == VAR and self.var[d >> 1] == self.var[g >> 1]:
                return True
        return (d & 1) != 0 and self.kind[d >> 1] == ONE_TAG

    cdef int64_t both(self, int64_t p1, int64_t q1, int64_t p2, int64_t q2, int64_t depth):
        cdef int64_t r = self.go(p1, q1, depth)
        if r >= 0:
            return r
        return self.go(p2, q2, depth)

    cdef int64_t expand(self, int64_t g, int64_t d, int64_t depth):
        cdef int64_t i, j, r, low
        cdef int k
        if self.axiom(g, d) or self.axiom(d, g):
            return -1
        if g != 0:
            i = g >> 1
            k = self.kind[i]
            if g & 1:
                if k == MEET:
                    return self.both(d, 2 * self.left[i] + 1, d, 2 * self.right[i] + 1, depth)
                if k == NOT:
                    return self.go(d, 2 * self.left[i], depth)
            else:
                if k == JOIN:
                    return self.both(2 * self.left[i], d, 2 * self.right[i], d, depth)
                if k == NOT:
                    return self.go(2 * self.left[i] + 1, d, depth)
        if d != 0:
            j = d >> 1
            k = self.kind[j]
            if d & 1:
                if k == MEET:
                    return self.both(g, 2 * self.left[j] + 1, g, 2 * self.right[j] + 1, depth)
                if k == NOT:
                    return self.go(g, 2 * self.left[j], depth)
            else:
                if k == JOIN:
                    return self.both(2 * self.left[j], g, 2 * self.right[j], g, depth)
                if k == NOT:
                    return self.go(2 * self.left[j] + 1, g, depth)
        low = INF
        if d != 0:
            r = self.go(g, 0, depth)
        elif g != 0:
            r = self.go(g, g, depth)
        else:
            r = INF
        if r < 0:
            return r
        low = min(low, r)
        if g != 0 and (g & 1) == 0 and self.kind[g >> 1] == MEET:
            i = g >> 1
            r = self.go(2 * self.left[i], d, depth)
            if r < 0:
                return r
            low = min(low, r)
            r = self.go(2 * self.right[i], d, depth)
            if r < 0:
                return r
            low = min(low, r)
        if (d & 1) and self.kind[d >> 1] == JOIN:
            j = d >> 1
            r = self.go(g, 2 * self.left[j] + 1, depth)
            if r < 0:
                return r
            low = min(low, r)
            r = self.go(g, 2 * self.right[j] + 1, depth)
            if r < 0:
                return r
            low = min(low, r)
        if g != d:
            r = self.go(d, g, depth)
            if r < 0:
                return r
            low = min(low, r)
        return low

    cdef int64_t go(self, int64_t g, int64_t d, int64_t depth):
        cdef int64_t key = g * self.M + d
        cdef int64_t r, v
        cdef size_t mark, idx
        cdef cmap[int64_t, int64_t].iterator it = self.store.find(key)
        if it != self.store.end():
            self.hits += 1
            v = deref(it).second
            if v == -2:
                return INF
            return v
        if depth >= self.fuel:
            return INF
        self.visits += 1
        self.store[key] = depth
        mark = self.pending.size()
        r = self.expand(g, d, depth + 1)
        if r < 0:
            self.store[key] = -1
            for idx in range(mark, self.pending.size()):
                self.store.erase(self.pending[idx])
            self.pending.resize(mark)
            return -1
        if r >= depth:
            self.store[key] = -2
            for idx in range(mark, self.pending.size()):
                self.store[self.pending[idx]] = -2
            self.pending.resize(mark)
            return INF
        self.store[key] = r
        self.pending.push_back(key)
        return r


def decide_arrays(kind, left, right, var, g, d, fuel):
    """Return ``(verdict, node_visits, memo_hits, inserts)``."""
    cdef _Search s = _Search()
    s.kind = kind
    s.left = left
    s.right = right
    s.var = var
    s.M = 2 * len(kind) + 2
    s.fuel = fuel
    s.visits = 0
    s.hits = 0
    cdef int64_t r = s.go(g, d, 0)
    return r < 0, s.visits, s.hits, s.visits


class _VisitLimit(Exception):
    pass


cdef class _NaiveSearch:
    # plain backtracking search over hash-consed arrays (equal subterms share
    # one id, so code equality is structural equality); same rule order and
    # loop check as search._Naive
    cdef vector[int] kind, left, right, var
    cdef unordered_set[int64_t] path
    cdef int64_t M, limit
    cdef public int64_t visits

    cdef bint axiom(self, int64_t g, int64_t d):
        cdef int k
        if g != 0 and (g & 1) == 0:
            k = self.kind[g >> 1]
            if k == ZERO_TAG:
                return True
            if k == VAR and (d & 1) and self.kind[d >> 1] == VAR and self.var[d >> 1] == self.var[g >> 1]:
                return True
        return (d & 1) != 0 and self.kind[d >> 1] == ONE_TAG

    cdef int go(self, int64_t g, int64_t d, int64_t n) except -1:
        cdef int64_t key = g * self.M + d
        cdef int64_t i
        cdef int k, ok
        if n <= 0:
            return 0
        if self.path.count(key):
            return 0
        self.visits += 1
        if self.limit >= 0 and self.visits > self.limit:
            raise _VisitLimit()
        if self.axiom(g, d):
            return 1
        self.path.insert(key)
        n -= 1
        if d == 0:
            ok = self.go(g, g, n)                     # Contract
        else:
            ok = self.go(g, 0, n)                     # Weaken
        if not ok and g != 0 and (g & 1) == 0:
            i = g >> 1
            k = self.kind[i]
            if k == MEET:
                ok = self.go(2 * self.left[i], d, n) or self.go(2 * self.right[i], d, n)
            elif k == JOIN:
                ok = self.go(2 * self.left[i], d, n) and self.go(2 * self.right[i], d, n)
            elif k == NOT:
                ok = self.go(2 * self.left[i] + 1, d, n)
        if not ok and (d & 1):
            i = d >> 1
            k = self.kind[i]
            if k == JOIN:
                ok = self.go(g, 2 * self.left[i] + 1, n) or self.go(g, 2 * self.right[i] + 1, n)
            elif k == MEET:
                ok = self.go(g, 2 * self.left[i] + 1, n) and self.go(g, 2 * self.right[i] + 1, n)
            elif k == NOT:
                ok = self.go(g, 2 * self.left[i], n)
        if not ok and g != d:
            ok = self.go(d, g, n)                     # Swap
        self.path.erase(key)
        return ok


def naive_arrays(kind, left, right, var, g, d, fuel, max_visits=-1):
    """Return ``(verdict, node_visits)``; verdict is ``None`` past ``max_visits``."""
    cdef _NaiveSearch s = _NaiveSearch()
    s.kind = kind
    s.left = left
    s.right = right
    s.var = var
    s.M = 2 * len(kind) + 2
    s.limit = max_visits
    s.visits = 0
    try:
        ok = s.go(g, d, fuel)
    except _VisitLimit:
        return None, s.visits
    return bool(ok), s.visits


# ---------------------------------------------------------------------------
# structural comparison for the structural memo stores; mirrors
# terms.compare_terms (no identity shortcut)

cdef int cmp_terms(object a, object b) except -2:
    cdef int ta, tb, c
    cdef long i, j
    while True:
        ta = a.tag
        tb = b.tag
        if ta != tb:
            return -1 if ta < tb else 1
        if ta == VAR:
            i = a.index
            j = b.index
            return -1 if i < j else (1 if i > j else 0)
        if ta == NOT:
            a = a.t
            b = b.t
            continue
        if ta == MEET or ta == JOIN:
            c = cmp_terms(a.l, b.l)
            if c:
                return c
            a = a.r
            b = b.r
            continue
        return 0


cdef int cmp_an(object a, object b) except -2:
    cdef int sa = a.side
    cdef int sb = b.side
    if sa != sb:
        return -1 if sa < sb else 1
    if sa == 0:
        return 0
    return cmp_terms(a.t, b.t)


cpdef int compare_sequents(tuple x, tuple y) except -2:
    cdef int c = cmp_an(x[0], y[0])
    if c:
        return c
    return cmp_an(x[1], y[1])


def assoc_index(list keys, tuple key):
    """Index of the newest entry equal to ``key``, or -1."""
    cdef Py_ssize_t i
    for i in range(len(keys) - 1, -1, -1):
        if compare_sequents(<tuple>keys[i], key) == 0:
            return i
    return -1


cdef class SeqKey:
    """Sequent key ordered by ``compare_sequents``."""
    cdef readonly tuple seq

    def __init__(self, tuple seq):
        self.seq = seq

    def __lt__(self, SeqKey other):
        return compare_sequents(self.seq, other.seq) < 0

    def __repr__(self):
        return f"SeqKey{self.seq!r}"
