import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthologic.terms import (LP, NP, ONE, RP, ZERO, InjectivityError, Join, L, Meet, MeetP, N, Not,
                              ParseError, R, Var, VarP, an_key, annotate, compare, compare_terms,
                              forget_ids, id_table, parse_an, parse_goal, parse_term, print_an,
                              print_term, subterms, term_size, var_name, variables)

from oracle import random_term

a, b = Var(1), Var(2)


def terms(max_leaves=30):
    leaf = st.one_of(st.integers(1, 30).map(Var), st.just(ZERO), st.just(ONE))
    return st.recursive(
        leaf,
        lambda kids: st.one_of(kids.map(Not), st.tuples(kids, kids).map(lambda p: Meet(*p)),
                               st.tuples(kids, kids).map(lambda p: Join(*p))),
        max_leaves=max_leaves)


def test_parse_examples():
    assert parse_term("a & !a") == Meet(a, Not(a))
    assert parse_term("!(x | y)") == Not(Join(a, b))
    assert parse_term("(a&b)|!a|!b") == Join(Join(Meet(a, b), Not(a)), Not(b))
    assert parse_term("0 | 1") == Join(ZERO, ONE)
    assert parse_term("foo_1 & Bar2 & foo_1") == Meet(Meet(a, b), a)


def test_print_examples():
    assert print_term(Meet(a, Not(a))) == "a & !a"
    assert print_term(ZERO) == "0"
    assert print_term(Join(a, Meet(a, b))) == "a | a & b"
    assert print_term(Meet(a, Meet(b, a))) == "a & (b & a)"
    assert print_term(Not(Meet(a, b))) == "!(a & b)"
    assert print_term(Var(24)) == "x1"
    assert print_term(Meet(a, b), {1: "p", 2: "q"}) == "p & q"


@pytest.mark.parametrize("text,pos", [("a &", 3), ("(a", 2), ("a b", 2), ("a | & b", 4), ("", 0), ("a # b", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_term(text)
    assert exc.value.pos == pos


def test_parse_goal():
    s, op, t = parse_goal("a & !a = !b & (a & b)")
    assert op == "=" and s == Meet(a, Not(a)) and t == Meet(Not(b), Meet(a, b))
    assert parse_goal("a <= a | b")[1] == "<="
    with pytest.raises(ParseError):
        parse_goal("a & b")


@settings(max_examples=300)
@given(terms())
def test_print_parse_roundtrip(t):
    assert parse_term(print_term(t), {var_name(i): i for i in range(1, 31)}) == t


def test_roundtrip_large_random_terms():
    rng = random.Random(5)
    syms = {var_name(i): i for i in range(1, 9)}
    for _ in range(200):
        t = random_term(rng, rng.randint(1, 200), 8)
        assert parse_term(print_term(t), dict(syms)) == t


def test_an_roundtrip():
    for x in (N, L(Meet(a, b)), R(Not(ZERO))):
        assert parse_an(print_an(x), {"a": 1, "b": 2}) == x


def test_term_size():
    assert term_size(a) == 1
    assert term_size(Meet(a, b)) == 3
    assert term_size(Not(Join(a, a))) == 4


def test_compare_examples():
    assert compare(N, L(a)) < 0
    assert compare(L(b), L(b)) == 0
    assert compare(L(a), L(Meet(a, a))) < 0
    assert compare(L(ONE), R(a)) < 0
    order = [a, Meet(a, a), Join(a, a), Not(a), ZERO, ONE]
    for x, y in zip(order, order[1:]):
        assert compare_terms(x, y) < 0


@settings(max_examples=200)
@given(terms(8), terms(8), terms(8))
def test_compare_is_total_order(x, y, z):
    assert compare_terms(x, x) == 0
    assert (compare_terms(x, y) == 0) == (x == y)
    assert compare_terms(x, y) == -compare_terms(y, x)
    if compare_terms(x, y) <= 0 and compare_terms(y, z) <= 0:
        assert compare_terms(x, z) <= 0


def test_equal_terms_hash_alike():
    t1, t2 = Meet(a, Not(b)), Meet(a, Not(b))
    assert t1 == t2 and hash(t1) == hash(t2) and t1 is not t2
    assert hash(L(t1)) == hash(L(t2)) and L(t1) != R(t1)
    assert {L(t1): 1}[L(t2)] == 1


def test_variables_and_index_check():
    assert variables(Meet(Var(3), Join(a, Var(3)))) == [1, 3]
    with pytest.raises(ValueError):
        Var(0)


def test_annotate_examples():
    assert annotate(a) == VarP(1, node_id=1)
    p = annotate(Meet(a, a))
    assert isinstance(p, MeetP) and p.node_id == 1 and p.l.node_id == 2 and p.r.node_id == 3
    q = annotate(Not(Meet(a, b)))
    assert [q.node_id, q.t.node_id, q.t.l.node_id, q.t.r.node_id] == [1, 2, 3, 4]


@settings(max_examples=200)
@given(terms())
def test_annotate_preorder_and_injective(t):
    p = annotate(t)
    assert forget_ids(p) == t
    table = id_table(p)
    assert sorted(table) == list(range(1, term_size(t) + 1))
    for nid, sub in table.items():
        assert sub.node_id == nid


def test_id_table_examples():
    assert list(id_table(annotate(a))) == [1]
    assert sorted(id_table(annotate(Meet(a, a)))) == [1, 2, 3]
    bad = MeetP(VarP(1, node_id=5), VarP(2, node_id=5), node_id=1)
    with pytest.raises(InjectivityError):
        id_table(bad)


def test_an_key():
    p = annotate(Meet(a, b), 7)
    assert an_key(1, p) == LP(7)
    assert an_key(2, p) == RP(7)
    assert an_key(0, None) is NP


def test_subterms():
    assert subterms(a) == [a]
    assert len(subterms(Meet(a, a))) == 2
    assert len(subterms(Not(Join(a, b)))) == 4
