"""Pure-Python identifier-keyed search kernel.

Terms arrive as flat arrays indexed by node id (``kind``, ``left``,
``right``, ``var``; a negation keeps its child in ``left``).  An annotated
formula is an int code: ``0`` is N, ``2 * id`` is ``L id`` and ``2 * id + 1``
is ``R id``.  Memo keys are the single int ``g * M + d``.

Store values: ``-1`` true, ``-2`` final false, ``k >= 0`` open or
provisionally false depending on the frame at depth ``k``.
"""

from .store import OrderedStore
from .terms import JOIN, MEET, NOT, ONE_TAG, VAR, ZERO_TAG

BACKEND = "python"

_INF = 1 << 62


def decide_arrays(kind, left, right, var, g, d, fuel):
    """Return ``(verdict, node_visits, memo_hits, inserts)``."""
    M = 2 * len(kind) + 2
    store = OrderedStore()
    get = store.get
    put = store.set
    delete = store.delete
    pending = []
    counts = [0, 0]  # visits, hits

    def axiom(g, d):
        if g and not g & 1:
            k = kind[g >> 1]
            if k == ZERO_TAG:
                return True
            if k == VAR and d & 1 and kind[d >> 1] == VAR and var[d >> 1] == var[g >> 1]:
                return True
        return bool(d & 1) and kind[d >> 1] == ONE_TAG

    def both(p1, q1, p2, q2, depth):
        r = go(p1, q1, depth)
        if r >= 0:
            return r
        return go(p2, q2, depth)

    def expand(g, d, depth):
        if axiom(g, d) or axiom(d, g):
            return -1
        # invertible rules, first component then second
        if g:
            i = g >> 1
            k = kind[i]
            if g & 1:
                if k == MEET:
                    return both(d, 2 * left[i] + 1, d, 2 * right[i] + 1, depth)
                if k == NOT:
                    return go(d, 2 * left[i], depth)
            else:
                if k == JOIN:
                    return both(2 * left[i], d, 2 * right[i], d, depth)
                if k == NOT:
                    return go(2 * left[i] + 1, d, depth)
        if d:
            j = d >> 1
            k = kind[j]
            if d & 1:
                if k == MEET:
                    return both(g, 2 * left[j] + 1, g, 2 * right[j] + 1, depth)
                if k == NOT:
                    return go(g, 2 * left[j], depth)
            else:
                if k == JOIN:
                    return both(2 * left[j], g, 2 * right[j], g, depth)
                if k == NOT:
                    return go(2 * left[j] + 1, g, depth)
        # non-invertible alternatives
        low = _INF
        if d:
            r = go(g, 0, depth)
        elif g:
            r = go(g, g, depth)
        else:
            r = _INF
        if r < 0:
            return r
        low = min(low, r)
        if g and not g & 1 and kind[g >> 1] == MEET:
            i = g >> 1
            for p in (2 * left[i], 2 * right[i]):
                r = go(p, d, depth)
                if r < 0:
                    return r
                low = min(low, r)
        if d & 1 and kind[d >> 1] == JOIN:
            j = d >> 1
            for q in (2 * left[j] + 1, 2 * right[j] + 1):
                r = go(g, q, depth)
                if r < 0:
                    return r
                low = min(low, r)
        if g != d:
            r = go(d, g, depth)
            if r < 0:
                return r
            low = min(low, r)
        return low

    def go(g, d, depth):
        key = g * M + d
        v = get(key)
        if v is not None:
            counts[1] += 1
            if v == -2:
                return _INF
            return v
        if depth >= fuel:
            return _INF
        counts[0] += 1
        put(key, depth)
        mark = len(pending)
        r = expand(g, d, depth + 1)
        if r < 0:
            put(key, -1)
            for k in pending[mark:]:
                delete(k)
            del pending[mark:]
            return -1
        if r >= depth:
            put(key, -2)
            for k in pending[mark:]:
                put(k, -2)
            del pending[mark:]
            return _INF
        put(key, r)
        pending.append(key)
        return r

    r = go(g, d, 0)
    return r < 0, counts[0], counts[1], counts[0]
