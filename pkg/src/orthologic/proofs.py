"""Explicit derivations in the orthologic sequent calculus, and a checker.

Left rules act on the first component of a sequent and right rules on the
second; ``Swap`` exchanges the components and ``Contract`` turns ``(G, G)``
into ``(G, N)``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .terms import (JOIN, MEET, NOT, ONE_TAG, VAR, ZERO_TAG, L, N, R, SIDE_L, SIDE_R,
                    AnnotatedFormula, Sequent, Term, canonical_symbols, parse_an, parse_term,
                    print_an, print_term)

__all__ = ["Rule", "Proof", "ProofError", "check_proof", "is_cut_free", "proof_size",
           "proof_depth", "count_cuts", "proof_to_obj", "proof_from_obj", "dumps", "loads",
           "format_sequent"]


class Rule(str, enum.Enum):
    HYP = "Hyp"
    WEAKEN = "Weaken"
    CONTRACT = "Contract"
    SWAP = "Swap"
    LEFT_AND1 = "LeftAnd1"
    LEFT_AND2 = "LeftAnd2"
    LEFT_OR = "LeftOr"
    LEFT_NOT = "LeftNot"
    RIGHT_AND = "RightAnd"
    RIGHT_OR1 = "RightOr1"
    RIGHT_OR2 = "RightOr2"
    RIGHT_NOT = "RightNot"
    CUT = "Cut"
    LEFT_ZERO = "LeftZero"
    RIGHT_ONE = "RightOne"

    def __str__(self):
        return self.value


ARITY = {
    Rule.HYP: 0, Rule.LEFT_ZERO: 0, Rule.RIGHT_ONE: 0,
    Rule.WEAKEN: 1, Rule.CONTRACT: 1, Rule.SWAP: 1, Rule.LEFT_AND1: 1, Rule.LEFT_AND2: 1,
    Rule.LEFT_NOT: 1, Rule.RIGHT_OR1: 1, Rule.RIGHT_OR2: 1, Rule.RIGHT_NOT: 1,
    Rule.LEFT_OR: 2, Rule.RIGHT_AND: 2, Rule.CUT: 2,
}


@dataclass(frozen=True, eq=True)
class Proof:
    rule: Rule
    conclusion: Sequent
    premises: Tuple["Proof", ...] = ()
    cut_formula: Optional[Term] = None

    def __repr__(self):
        return f"Proof({self.rule.value}, {format_sequent(self.conclusion)}, {len(self.premises)} premises)"


def format_sequent(s: Sequent) -> str:
    return f"({print_an(s[0])}, {print_an(s[1])})"


class ProofError(ValueError):
    def __init__(self, path: Tuple[int, ...], message: str):
        where = "root" if not path else "root/" + "/".join(map(str, path))
        super().__init__(f"{where}: {message}")
        self.path = path


def _is(a: AnnotatedFormula, side: int, tag: int) -> bool:
    return a is not N and a.side == side and a.t.tag == tag


def _check_node(p: Proof) -> Optional[str]:
    rule = p.rule
    if not isinstance(rule, Rule):
        return f"unknown rule {rule!r}"
    if len(p.premises) != ARITY[rule]:
        return f"{rule} expects {ARITY[rule]} premises, got {len(p.premises)}"
    if rule is not Rule.CUT and p.cut_formula is not None:
        return f"{rule} carries a cut formula"
    g, d = p.conclusion
    prem = [q.conclusion for q in p.premises]

    if rule is Rule.HYP:
        if not (_is(g, SIDE_L, VAR) and _is(d, SIDE_R, VAR)):
            return "Hyp concludes (L var, R var)"
        if g.t.index != d.t.index:
            return "Hyp requires identical variables"
    elif rule is Rule.LEFT_ZERO:
        if not _is(g, SIDE_L, ZERO_TAG):
            return "LeftZero concludes (L 0, _)"
    elif rule is Rule.RIGHT_ONE:
        if not _is(d, SIDE_R, ONE_TAG):
            return "RightOne concludes (_, R 1)"
    elif rule is Rule.WEAKEN:
        if prem[0][1] is not N or prem[0][0] != g:
            return "Weaken derives (G, D) from (G, N)"
    elif rule is Rule.CONTRACT:
        if d is not N or prem[0] != (g, g):
            return "Contract derives (G, N) from (G, G)"
    elif rule is Rule.SWAP:
        if prem[0] != (d, g):
            return "Swap derives (D, G) from (G, D)"
    elif rule in (Rule.LEFT_AND1, Rule.LEFT_AND2):
        if not _is(g, SIDE_L, MEET):
            return f"{rule} concludes (L (a & b), D)"
        part = g.t.l if rule is Rule.LEFT_AND1 else g.t.r
        if prem[0] != (L(part), d):
            return f"{rule} premise must be (L {'a' if rule is Rule.LEFT_AND1 else 'b'}, D)"
    elif rule is Rule.LEFT_OR:
        if not _is(g, SIDE_L, JOIN):
            return "LeftOr concludes (L (a | b), D)"
        if prem[0] != (L(g.t.l), d) or prem[1] != (L(g.t.r), d):
            return "LeftOr premises must be (L a, D) and (L b, D)"
    elif rule is Rule.LEFT_NOT:
        if not _is(g, SIDE_L, NOT):
            return "LeftNot concludes (L !a, D)"
        if prem[0] != (R(g.t.t), d):
            return "LeftNot premise must be (R a, D)"
    elif rule is Rule.RIGHT_AND:
        if not _is(d, SIDE_R, MEET):
            return "RightAnd concludes (G, R (a & b))"
        if prem[0] != (g, R(d.t.l)) or prem[1] != (g, R(d.t.r)):
            return "RightAnd premises must be (G, R a) and (G, R b)"
    elif rule in (Rule.RIGHT_OR1, Rule.RIGHT_OR2):
        if not _is(d, SIDE_R, JOIN):
            return f"{rule} concludes (G, R (a | b))"
        part = d.t.l if rule is Rule.RIGHT_OR1 else d.t.r
        if prem[0] != (g, R(part)):
            return f"{rule} premise must be (G, R {'a' if rule is Rule.RIGHT_OR1 else 'b'})"
    elif rule is Rule.RIGHT_NOT:
        if not _is(d, SIDE_R, NOT):
            return "RightNot concludes (G, R !a)"
        if prem[0] != (g, L(d.t.t)):
            return "RightNot premise must be (G, L a)"
    elif rule is Rule.CUT:
        b = p.cut_formula
        if b is None:
            return "Cut needs a cut formula"
        if prem[0] != (g, R(b)) or prem[1] != (L(b), d):
            return "Cut derives (G, D) from (G, R b) and (L b, D)"
    return None


def check_proof(p: Proof) -> Sequent:
    """Validate every node; return the root conclusion or raise ``ProofError``.

    Shared sub-derivations are checked once.
    """
    done = set()
    stack: List[Tuple[Proof, Tuple[int, ...]]] = [(p, ())]
    while stack:
        q, path = stack.pop()
        if id(q) in done:
            continue
        if not isinstance(q, Proof):
            raise ProofError(path, f"not a proof node: {q!r}")
        msg = _check_node(q)
        if msg is not None:
            raise ProofError(path, msg)
        done.add(id(q))
        for i, sub in enumerate(q.premises):
            stack.append((sub, path + (i,)))
    return p.conclusion


def _fold(p: Proof, combine):
    memo: Dict[int, Any] = {}
    stack = [(p, False)]
    while stack:
        q, ready = stack.pop()
        if id(q) in memo:
            continue
        if ready:
            memo[id(q)] = combine(q, [memo[id(s)] for s in q.premises])
        else:
            stack.append((q, True))
            for s in q.premises:
                if id(s) not in memo:
                    stack.append((s, False))
    return memo[id(p)]


def is_cut_free(p: Proof) -> bool:
    return _fold(p, lambda q, subs: q.rule is not Rule.CUT and all(subs))


def count_cuts(p: Proof) -> int:
    return _fold(p, lambda q, subs: (q.rule is Rule.CUT) + sum(subs))


def proof_size(p: Proof) -> int:
    """Node count of the proof tree (shared sub-derivations counted per use)."""
    return _fold(p, lambda q, subs: 1 + sum(subs))


def proof_depth(p: Proof) -> int:
    return _fold(p, lambda q, subs: 1 + max(subs, default=0))


# ---------------------------------------------------------------------------
# serialization

def proof_to_obj(p: Proof) -> Dict[str, Any]:
    obj: Dict[str, Any] = {"rule": p.rule.value,
                           "conclusion": [print_an(p.conclusion[0]), print_an(p.conclusion[1])]}
    if p.cut_formula is not None:
        obj["cutFormula"] = print_term(p.cut_formula)
    obj["premises"] = [proof_to_obj(q) for q in p.premises]
    return obj


def proof_from_obj(obj: Dict[str, Any], symbols: Optional[Dict[str, int]] = None) -> Proof:
    """Inverse of ``proof_to_obj``; names follow the printer's canonical table."""
    if symbols is None:
        symbols = canonical_symbols()
    try:
        rule = Rule(obj["rule"])
        g, d = obj["conclusion"]
    except (KeyError, ValueError, TypeError) as exc:
        raise ValueError(f"malformed proof node: {exc}") from None
    cut = obj.get("cutFormula")
    return Proof(rule, (parse_an(g, symbols), parse_an(d, symbols)),
                 tuple(proof_from_obj(q, symbols) for q in obj.get("premises", [])),
                 parse_term(cut, symbols) if cut is not None else None)


def dumps(p: Proof) -> str:
    return json.dumps(proof_to_obj(p), indent=1) + "\n"


def loads(text: str) -> Proof:
    return proof_from_obj(json.loads(text))
