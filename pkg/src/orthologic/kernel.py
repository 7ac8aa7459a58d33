"""Identifier-keyed decision engine.

The search itself runs in a kernel over flat arrays.  A compiled kernel
(``orthologic._kernel``, built from Cython) is used when available; the
pure-Python ``_kernel_py`` is the fallback.  Set ``ORTHOLOGIC_PURE=1`` to
force the fallback.
"""

from __future__ import annotations

import os
from typing import Optional

from . import _kernel_py
from .terms import (JOIN, MEET, NOT, SIDE_N, SIDE_R, VAR, AnnotatedFormula, IdTerm, InjectivityError,
                    annotate, id_table, sequent_size, term_size)

try:
    if os.environ.get("ORTHOLOGIC_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernel as _compiled  # type: ignore
except ImportError:
    _compiled = None

BACKENDS = {"python": _kernel_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

DEFAULT_BACKEND = "compiled" if _compiled is not None else "python"

__all__ = ["BACKENDS", "DEFAULT_BACKEND", "InjectivityError", "decide_ids_terms",
           "decide_annotated", "build_arrays", "build_shared", "naive_compiled"]


def build_arrays(*roots: IdTerm):
    """Flatten identifier terms into ``(kind, left, right, var)`` arrays.

    Raises ``InjectivityError`` if an identifier is reused.
    """
    table = id_table(*roots)
    size = max(table, default=0) + 1
    kind = [-1] * size
    left = [0] * size
    right = [0] * size
    var = [0] * size
    for nid, u in table.items():
        if nid <= 0:
            raise InjectivityError(f"identifier {nid} is not positive")
        tag = u.tag
        kind[nid] = tag
        if tag == VAR:
            var[nid] = u.index
        elif tag == MEET or tag == JOIN:
            left[nid] = u.l.node_id
            right[nid] = u.r.node_id
        elif tag == NOT:
            left[nid] = u.t.node_id
    return kind, left, right, var


def _code(side: int, p: Optional[IdTerm]) -> int:
    if side == SIDE_N:
        return 0
    return 2 * p.node_id + (1 if side == SIDE_R else 0)


def decide_ids_terms(gside: int, gp: Optional[IdTerm], dside: int, dp: Optional[IdTerm],
                     fuel: int, stats=None, backend: Optional[str] = None) -> bool:
    """Decide the sequent whose components are identifier terms with sides."""
    roots = [p for side, p in ((gside, gp), (dside, dp)) if side != SIDE_N]
    kind, left, right, var = build_arrays(*roots)
    mod = BACKENDS[backend or DEFAULT_BACKEND]
    ok, visits, hits, inserts = mod.decide_arrays(kind, left, right, var,
                                                  _code(gside, gp), _code(dside, dp), fuel)
    if stats is not None:
        stats.node_visits += visits
        stats.memo_hits += hits
        stats.distinct += inserts
    return bool(ok)


def decide_annotated(g: AnnotatedFormula, d: AnnotatedFormula, fuel: Optional[int] = None,
                     stats=None, backend: Optional[str] = None) -> bool:
    """Annotate both components in one pass and decide with the identifier engine."""
    if fuel is None:
        n = sequent_size(g, d)
        fuel = 4 * n * n + 1
    nxt = 1
    gp = dp = None
    if g.side != SIDE_N:
        gp = annotate(g.t, nxt)
        nxt += term_size(g.t)
    if d.side != SIDE_N:
        dp = annotate(d.t, nxt)
    return decide_ids_terms(g.side, gp, d.side, dp, fuel, stats, backend)


def build_shared(g: AnnotatedFormula, d: AnnotatedFormula):
    """Hash-consed arrays for a sequent: equal subterms get one id.

    Returns ``(kind, left, right, var, gcode, dcode)``.
    """
    kind, left, right, var = [-1], [0], [0], [0]
    ids = {}

    def node(t):
        nid = ids.get(t)
        if nid is not None:
            return nid
        tag = t.tag
        a = b = x = 0
        if tag == VAR:
            x = t.index
        elif tag == MEET or tag == JOIN:
            a, b = node(t.l), node(t.r)
        elif tag == NOT:
            a = node(t.t)
        nid = len(kind)
        kind.append(tag)
        left.append(a)
        right.append(b)
        var.append(x)
        ids[t] = nid
        return nid

    codes = []
    for a in (g, d):
        if a.side == SIDE_N:
            codes.append(0)
        else:
            codes.append(2 * node(a.t) + (1 if a.side == SIDE_R else 0))
    return kind, left, right, var, codes[0], codes[1]


def naive_compiled(g: AnnotatedFormula, d: AnnotatedFormula, fuel: int,
                   max_visits: Optional[int] = None):
    """Compiled naive search; ``(verdict, visits)``, verdict ``None`` past ``max_visits``."""
    kind, left, right, var, gc, dc = build_shared(g, d)
    return _compiled.naive_arrays(kind, left, right, var, gc, dc, fuel,
                                  -1 if max_visits is None else max_visits)
