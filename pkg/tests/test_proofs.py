import json
import random

import pytest

from orthologic.proofs import (ARITY, Proof, ProofError, Rule, check_proof, count_cuts, dumps,
                               is_cut_free, loads, proof_depth, proof_size, proof_to_obj)
from orthologic.search import Prover, prove
from orthologic.semantics import BOOL, O6, sequent_valid
from orthologic.terms import ONE, ZERO, Join, L, Meet, N, Not, R, Var, parse_goal

from oracle import random_sequent

a, b = Var(1), Var(2)
HYP = Proof(Rule.HYP, (L(a), R(a)))


def test_check_examples():
    assert check_proof(HYP) == (L(a), R(a))
    p = Proof(Rule.RIGHT_AND, (L(a), R(Meet(a, a))), (HYP, HYP))
    assert check_proof(p) == (L(a), R(Meet(a, a)))
    with pytest.raises(ProofError, match="Hyp requires identical variables"):
        check_proof(Proof(Rule.HYP, (L(a), R(b))))


def test_error_reports_path():
    bad = Proof(Rule.HYP, (L(a), R(b)))
    p = Proof(Rule.RIGHT_AND, (L(a), R(Meet(a, b))), (HYP, bad))
    with pytest.raises(ProofError) as exc:
        check_proof(p)
    assert exc.value.path == (1,)


def test_every_rule_shape():
    rules = [
        Proof(Rule.LEFT_ZERO, (L(ZERO), R(a))),
        Proof(Rule.RIGHT_ONE, (N, R(ONE))),
        Proof(Rule.SWAP, (R(a), L(a)), (HYP,)),
        Proof(Rule.LEFT_AND1, (L(Meet(a, b)), R(a)), (HYP,)),
        Proof(Rule.LEFT_AND2, (L(Meet(b, a)), R(a)), (HYP,)),
        Proof(Rule.RIGHT_OR1, (L(a), R(Join(a, b))), (HYP,)),
        Proof(Rule.RIGHT_OR2, (L(a), R(Join(b, a))), (HYP,)),
        Proof(Rule.LEFT_OR, (L(Join(a, a)), R(a)), (HYP, HYP)),
        Proof(Rule.LEFT_NOT, (L(Not(a)), L(a)), (Proof(Rule.SWAP, (R(a), L(a)), (HYP,)),)),
        Proof(Rule.RIGHT_NOT, (R(a), R(Not(a))), (Proof(Rule.SWAP, (R(a), L(a)), (HYP,)),)),
        Proof(Rule.WEAKEN, (L(ZERO), R(b)), (Proof(Rule.LEFT_ZERO, (L(ZERO), N)),)),
        Proof(Rule.CONTRACT, (L(ZERO), N), (Proof(Rule.LEFT_ZERO, (L(ZERO), L(ZERO))),)),
        Proof(Rule.CUT, (L(a), R(a)), (HYP, HYP), a),
    ]
    for p in rules:
        check_proof(p)
    assert {p.rule for p in rules} | {Rule.HYP, Rule.RIGHT_AND} == set(Rule)


@pytest.mark.parametrize("p", [
    Proof(Rule.WEAKEN, (L(a), R(b)), (HYP,)),
    Proof(Rule.CONTRACT, (L(a), N), (HYP,)),
    Proof(Rule.SWAP, (L(a), R(a)), (HYP,)),
    Proof(Rule.LEFT_AND1, (L(Meet(b, a)), R(a)), (HYP,)),
    Proof(Rule.LEFT_OR, (L(Join(a, b)), R(a)), (HYP, HYP)),
    Proof(Rule.CUT, (L(a), R(a)), (HYP, HYP), b),
    Proof(Rule.CUT, (L(a), R(a)), (HYP, HYP)),
    Proof(Rule.HYP, (L(a), R(a)), (HYP,)),
    Proof(Rule.HYP, (L(a), R(a)), (), a),
    Proof(Rule.LEFT_ZERO, (L(a), R(a))),
    Proof(Rule.RIGHT_ONE, (L(a), R(a))),
])
def test_rejects_malformed(p):
    with pytest.raises(ProofError):
        check_proof(p)


def test_arity_table_complete():
    assert set(ARITY) == set(Rule)
    assert sum(1 for r in Rule if ARITY[r] == 2) == 3


def test_size_and_depth():
    assert (proof_size(HYP), proof_depth(HYP)) == (1, 1)
    sw = Proof(Rule.SWAP, (R(a), L(a)), (HYP,))
    assert (proof_size(sw), proof_depth(sw)) == (2, 2)
    ra = Proof(Rule.RIGHT_AND, (L(a), R(Meet(a, a))), (HYP, HYP))
    assert (proof_size(ra), proof_depth(ra)) == (3, 2)


def test_cut_free_and_cut_count():
    assert is_cut_free(HYP)
    c = Proof(Rule.CUT, (L(a), R(a)), (HYP, HYP), a)
    assert not is_cut_free(c) and count_cuts(c) == 1
    assert count_cuts(Proof(Rule.CUT, (L(a), R(a)), (c, c), a)) == 3


def test_prover_output_is_cut_free_and_checks():
    p = prove(L(a), R(a))
    assert p.rule is Rule.HYP
    s, _, t = parse_goal("a & !a <= !b & (a & b)")
    q = prove(L(s), R(t))
    assert check_proof(q) == (L(s), R(t)) and is_cut_free(q)
    s, _, t = parse_goal("x & (y | z) <= (x & y) | (x & z)")
    assert prove(L(s), R(t)) is None


def test_json_roundtrip_bit_exact():
    s, _, t = parse_goal("(a & b) | !a | !b <= 1 & (c | !c)")
    p = prove(L(t), R(s))
    text = dumps(p)
    assert loads(text) == p
    assert dumps(loads(text)) == text
    obj = json.loads(text)
    assert obj["rule"] == p.rule.value and len(obj["conclusion"]) == 2
    c = Proof(Rule.CUT, (L(a), R(a)), (HYP, HYP), Meet(a, b))
    assert proof_to_obj(c)["cutFormula"] == "a & b"


def test_json_format_example():
    obj = proof_to_obj(Proof(Rule.LEFT_AND1, (L(Meet(a, b)), R(a)), (HYP,)))
    assert obj["conclusion"] == ["L:a & b", "R:a"]
    assert loads(json.dumps({"rule": "LeftAnd1", "conclusion": ["L:a&b", "R:a"],
                             "premises": [{"rule": "Hyp", "conclusion": ["L:a", "R:a"], "premises": []}]}))


def test_loads_rejects_garbage():
    with pytest.raises(ValueError):
        loads('{"rule": "Frobnicate", "conclusion": ["N", "N"], "premises": []}')
    with pytest.raises(ValueError):
        loads('{"conclusion": ["N", "N"]}')


def test_soundness_of_prover_proofs():
    # checker-valid proofs only conclude semantically valid sequents
    rng = random.Random(11)
    pv = Prover()
    found = 0
    for _ in range(400):
        g, d = random_sequent(rng, 10, 3)
        p = pv.prove(g, d)
        if p is None:
            continue
        found += 1
        assert check_proof(p) == (g, d)
        assert sequent_valid(g, d, BOOL).holds
        assert sequent_valid(g, d, O6).holds
    assert found > 50
