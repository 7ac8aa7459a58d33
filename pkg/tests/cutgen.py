"""Random checker-valid proofs with cuts, built by composing prover outputs."""

from orthologic.proofs import Proof, Rule, check_proof
from orthologic.terms import ONE, SIDE_L, SIDE_R, ZERO, Join, L, Meet, N, Not, R

from oracle import random_term


def inflate(p, rng, rate=0.15):
    """Equivalent proof with extra structural steps (double swaps, weaken+contract)."""
    prems = tuple(inflate(q, rng, rate) for q in p.premises)
    if prems != p.premises:
        p = Proof(p.rule, p.conclusion, prems, p.cut_formula)
    g, d = p.conclusion
    if rng.random() < rate:
        p = Proof(Rule.SWAP, p.conclusion, (Proof(Rule.SWAP, (d, g), (p,)),))
    if d is N and rng.random() < rate:
        p = Proof(Rule.CONTRACT, (g, N), (Proof(Rule.WEAKEN, (g, g), (p,)),))
    return p


def _left_for(b, rng, nvars):
    x = random_term(rng, rng.randint(1, 3), nvars)
    return rng.choice([L(b), L(Meet(b, x)), L(Meet(x, b)), L(ZERO), R(Not(b)),
                       L(Not(Not(b))), L(random_term(rng, rng.randint(1, 5), nvars))])


def _right_for(b, rng, nvars):
    y = random_term(rng, rng.randint(1, 3), nvars)
    return rng.choice([R(b), R(Join(b, y)), R(Join(y, b)), R(ONE), L(Not(b)), N,
                       R(random_term(rng, rng.randint(1, 5), nvars))])


def proof_tree(g, d, pv, rng, depth, nvars=3):
    """Proof of (g, d) (known provable), with cuts inserted down to ``depth``."""
    if depth > 0 and rng.random() < 0.7:
        cands = []
        if g is not N and g.side == SIDE_L:
            cands += [g.t, Join(g.t, random_term(rng, 2, nvars))]
        if d is not N and d.side == SIDE_R:
            cands += [d.t, Meet(d.t, random_term(rng, 2, nvars))]
        cands.append(random_term(rng, rng.randint(1, 4), nvars))
        rng.shuffle(cands)
        for c in cands:
            if pv.prove(g, R(c)) is not None and pv.prove(L(c), d) is not None:
                A = proof_tree(g, R(c), pv, rng, depth - 1, nvars)
                B = proof_tree(L(c), d, pv, rng, depth - 1, nvars)
                return Proof(Rule.CUT, (g, d), (A, B), c)
    p = pv.prove(g, d)
    assert p is not None
    return inflate(p, rng)


def random_cut_proof(rng, pv, depth=2, nvars=3):
    """A checker-valid proof whose root is a Cut; deeper cuts appear with ``depth > 1``."""
    while True:
        b = random_term(rng, rng.randint(1, 5), nvars)
        g, d = _left_for(b, rng, nvars), _right_for(b, rng, nvars)
        if pv.prove(g, R(b)) is None or pv.prove(L(b), d) is None:
            continue
        A = proof_tree(g, R(b), pv, rng, depth - 1, nvars)
        B = proof_tree(L(b), d, pv, rng, depth - 1, nvars)
        p = Proof(Rule.CUT, (g, d), (A, B), b)
        check_proof(p)
        return p


def contraction_case(pv):
    """The pinned Contract edge case: cut on a|b where the right premise ends in Contract.

    Returns ``(cut formula, A, B, naive)`` where ``naive`` is the tempting reduct
    cut(alpha, A', B'1), which concludes the wrong sequent.
    """
    from orthologic.terms import Var
    alpha, beta = Meet(Var(1), Not(Var(1))), Meet(Var(2), Not(Var(2)))
    ab = Join(alpha, beta)
    A1 = pv.prove(L(alpha), R(alpha))
    A = Proof(Rule.RIGHT_OR1, (L(alpha), R(ab)), (A1,))
    B1 = Proof(Rule.LEFT_OR, (L(ab), L(ab)), (pv.prove(L(alpha), L(ab)), pv.prove(L(beta), L(ab))))
    B = Proof(Rule.CONTRACT, (L(ab), N), (B1,))
    naive = Proof(Rule.CUT, (L(alpha), L(ab)), (A1, B1.premises[0]), alpha)
    return ab, A, B, naive
