"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` or ``python tests/test_acceptance.py``.
Criterion 5 and 8 share one benchmark run (several minutes on one core).
"""

import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from orthologic import bench  # noqa: E402
from orthologic.cutelim import eliminate_cuts, eliminate_one_cut  # noqa: E402
from orthologic.normalize import normalize  # noqa: E402
from orthologic.proofs import check_proof, is_cut_free  # noqa: E402
from orthologic.search import ENGINES, Prover, decide, decide_sequent, decide_terms  # noqa: E402
from orthologic.semantics import BOOL, O6, evaluate, leq_semantic, sequent_valid  # noqa: E402
from orthologic.tauto import iff, occurrences, tauto  # noqa: E402
from orthologic.terms import L, N, R, parse_goal, term_size  # noqa: E402

from cutgen import contraction_case, random_cut_proof  # noqa: E402
from oracle import closure, random_sequent, random_term, saturate, terms_up_to, truth_table  # noqa: E402

RESULTS = {}

SWAP_SIZES = [20, 22, 24, 26, 28, 30, 34, 38, 40, 50, 60, 70, 80, 90, 100]
SLOPE_CAPS = {"ids": 2.5, "memo-map": 3.7, "memo-list": 5.5}
TIMEOUT = 30.0


class Fail(Exception):
    pass


def need(cond, msg):
    if not cond:
        raise Fail(msg)


def criterion(n, fn):
    """Run one criterion, print its verdict line, fail the test if it failed."""
    t0 = time.monotonic()
    try:
        detail = fn()
        ok = True
    except Fail as exc:
        ok, detail = False, str(exc)
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} [{time.monotonic() - t0:.1f}s] {detail}"
    RESULTS[n] = line
    print("\n" + line, flush=True)
    if not ok:
        pytest.fail(line, pytrace=False)


# ---------------------------------------------------------------------------

def c1_engine_agreement():
    t0 = time.monotonic()
    ts = terms_up_to(4, 2)
    proven = saturate(closure(ts))
    forms = [N] + [f(t) for t in ts for f in (L, R)]
    checked = 0
    for g in forms:
        for d in forms:
            want = (g, d) in proven
            for e in ENGINES:
                need(decide_sequent(g, d, e) == want, f"{e} disagrees with enumeration on {g}, {d}")
            checked += 1
    rng = random.Random(1)
    for _ in range(1000):
        g, d = random_sequent(rng, 12, 3)
        vs = {decide_sequent(g, d, e) for e in ENGINES}
        need(len(vs) == 1, f"engines disagree on {g}, {d}")
    took = time.monotonic() - t0
    need(took < 120, f"took {took:.0f}s (limit 120s)")
    return f"{checked} exhaustive sequents x {len(ENGINES)} engines + 1000 random, {took:.0f}s"


def _goal_corpus():
    goals = ["a & !a = !b & (a & b)", "1 = (a & b) | !a | !b", "a | (a & b) = a",
             "!(a | b) = !a & !b", "!!a = a", "a & b <= a | c", "a <= a | (b & !b)",
             "(a | b) & (a | !b) <= a | (b & !b) | (a & b)", "0 <= a", "a <= 1",
             "x & (y | z) <= (x & y) | (x & z)"]
    out = [parse_goal(g) for g in goals]
    for n in (2, 4, 6, 8):
        s, t = bench.gen_swap_pairs(n)
        out.append((s, "=", t))
    rng = random.Random(2)
    for _ in range(600):
        out.append((random_term(rng, rng.randint(1, 10), 4), "<=", random_term(rng, rng.randint(1, 10), 4)))
    return out


def c2_soundness_chain():
    pv = Prover()
    seqs = []
    for s, op, t in _goal_corpus():
        seqs.append((L(s), R(t)))
        if op == "=":
            seqs.append((L(t), R(s)))
    rng = random.Random(3)
    seqs += [random_sequent(rng, 14, 4) for _ in range(600)]
    provable = 0
    for g, d in seqs:
        if not decide_sequent(g, d, "ids"):
            continue
        provable += 1
        p = pv.prove(g, d)
        need(p is not None, f"no proof emitted for provable {g}, {d}")
        need(check_proof(p) == (g, d), f"checker rejects proof of {g}, {d}")
        need(is_cut_free(p), f"proof of {g}, {d} has cuts")
        for ol in (BOOL, O6):
            need(sequent_valid(g, d, ol).holds, f"{g}, {d} fails in {ol.name}")
    need(provable > 100, f"only {provable} provable sequents in corpus")
    return f"{provable} provable sequents, zero failures"


def c3_non_theorems():
    s, _, t = parse_goal("x & (y | z) <= (x & y) | (x & z)")
    for e in ENGINES:
        need(not decide_terms(s, t, "<=", e).provable, f"{e} proves distributivity")
    res = leq_semantic(s, t, O6)
    need(not res.holds and res.witness is not None, "no O6 counter-valuation")
    w = res.witness
    need(not O6.leq(O6.meet(w[1], O6.join(w[2], w[3])),
                    O6.join(O6.meet(w[1], w[2]), O6.meet(w[1], w[3]))), "witness does not refute")
    for e in ENGINES:
        need(decide("1 = (a & b) | !a | !b", e).provable, f"{e} fails the tautology")
    names = {v: O6.labels[x] for v, x in w.items()}
    return f"distributivity refuted in O6 at {names}; tautology provable by all engines"


def c4_cut_elimination():
    t0 = time.monotonic()
    pv = Prover()
    rng = random.Random(4)
    calls = 0
    for i in range(1000):
        p = random_cut_proof(rng, pv, depth=1 + i % 3)
        trace = []
        q = eliminate_cuts(p, trace)
        need(check_proof(q) == p.conclusion, f"proof {i}: conclusion changed")
        need(is_cut_free(q), f"proof {i}: cuts remain")
        for m, parent in trace:
            need(parent is None or m < parent, f"proof {i}: measure {m} !< {parent}")
        calls += len(trace)
    ab, A, B, naive = contraction_case(pv)
    alpha = ab.l
    need(check_proof(naive) != (L(alpha), N), "regression premise changed")
    trace = []
    out = eliminate_one_cut(ab, A, B, trace)
    need(check_proof(out) == (L(alpha), N) and is_cut_free(out), "contraction case wrong")
    need(all(parent is None or m < parent for m, parent in trace), "measure not decreasing")
    took = time.monotonic() - t0
    need(took < 300, f"took {took:.0f}s (limit 300s)")
    return f"1000 random cut proofs ({calls} reduction calls) + contraction regression, {took:.0f}s"


@pytest.fixture(scope="module")
def swap_runs():
    recs = bench.run_bench(list(SLOPE_CAPS), "swap-pairs", SWAP_SIZES, repeats=3, timeout=TIMEOUT)
    naive = bench.run_bench(["naive"], "swap-pairs", [n for n in SWAP_SIZES if n <= 30], repeats=1,
                            timeout=TIMEOUT, warmup=False)
    return recs, naive


def c5_complexity(recs, naive):
    med = {e: bench.median_times([r for r in recs if r.engine == e]) for e in SLOPE_CAPS}
    at30 = {e: med[e].get(30) for e in SLOPE_CAPS}
    need(all(v is not None for v in at30.values()), f"an engine did not finish n=30: {at30}")
    need(at30["ids"] < at30["memo-map"] < at30["memo-list"], f"ordering at n=30 wrong: {at30}")
    need(at30["ids"] < 2.0, f"ids took {at30['ids']:.2f}s at n=30")
    slopes = {}
    for e, cap in SLOPE_CAPS.items():
        try:
            slopes[e] = bench.fit_degree([r for r in recs if r.engine == e])
        except bench.InsufficientData as exc:
            raise Fail(f"{e}: {exc}")
        need(slopes[e] <= cap, f"{e} slope {slopes[e]:.2f} > {cap}")
    timed_out = [r.n for r in naive if r.timeout]
    need(timed_out and min(timed_out) <= 30, "naive did not time out by n=30")
    need(all(n in med[e] for e in SLOPE_CAPS for n in [min(timed_out)]),
         "memoized engines did not finish where naive timed out")
    spans = {e: f"{min(med[e])}..{max(med[e])}" for e in SLOPE_CAPS}
    return (f"n=30 times {', '.join(f'{e}={t:.3f}s' for e, t in at30.items())}; slopes "
            f"{', '.join(f'{e}={s:.2f} over n={spans[e]}' for e, s in slopes.items())}; "
            f"naive timeout at n={min(timed_out)}")


def c6_normalizer():
    t0 = time.monotonic()
    rng = random.Random(6)
    for i in range(500):
        t = random_term(rng, rng.randint(1, 60), rng.randint(1, 7))
        r = normalize(t)
        need(decide_terms(t, r, "<=").provable and decide_terms(r, t, "<=").provable,
             f"term {i}: not OL-equivalent")
        need(term_size(r) <= term_size(t), f"term {i}: grew")
        need(normalize(r) == r, f"term {i}: not idempotent")
        need(truth_table(iff(t, r))[0], f"term {i}: not boolean-equivalent")
    s, _, nf = parse_goal("!(((!x0 & !x0)|(x0 & x1)|(x0 & !x1)|(!x0 & !x0)) & "
                          "((x1 & x0)|(!x0 & x1)|(!x0 & !x1)|(!x0 & x1))) = "
                          "(!x1 | !x0) & (x0 | x1) & (x0 | !x1)")
    r = normalize(s)
    lits = sum(occurrences(r).values())
    need(lits <= 6, f"normal form has {lits} literals")
    need(decide_terms(r, nf, "=").provable, "normal form not OL-equal to the printed one")
    took = time.monotonic() - t0
    need(took < 180, f"took {took:.0f}s (limit 180s)")
    return f"500 random terms; fixed formula -> {lits} literals; {took:.0f}s"


def c7_bool_solver():
    rng = random.Random(7)
    cex = 0
    for i in range(300):
        t = random_term(rng, rng.randint(1, 40), rng.randint(1, 10))
        want, _ = truth_table(t)
        res = tauto(t)
        need(res.valid == want, f"formula {i}: verdict differs from truth table")
        if not res.valid:
            cex += 1
            need(evaluate(t, res.counterexample, BOOL) == BOOL.zero,
                 f"formula {i}: counterexample does not falsify")
    recs = bench.run_bench(["tauto"], "hard-random", range(80), repeats=1, timeout=TIMEOUT, warmup=False)
    done = [r for r in recs if not r.timeout]
    valid = sum(1 for r in done if r.verdict)
    need(len(done) >= 72, f"only {len(done)}/80 hard instances finished")
    return (f"300 random formulas agree ({cex} counterexamples checked); hard corpus "
            f"{len(done)}/80 finished ({valid} valid, {len(done) - valid} invalid)")


def c8_subformula_bound(recs):
    worst_n, worst_size = 0.0, 0.0
    runs = 0
    for r in recs:
        if r.timeout:
            continue
        d = r.extra.get("distinct_max", 0)
        need(d <= 4 * r.n ** 2, f"{r.engine} n={r.n}: {d} distinct > 4n^2 = {4 * r.n ** 2}")
        size = r.extra["size"]
        need(d <= 4 * size ** 2, f"{r.engine} n={r.n}: {d} distinct > 4*size^2")
        worst_n = max(worst_n, d / (4 * r.n ** 2))
        worst_size = max(worst_size, d / (4 * size ** 2))
        runs += 1
    need(runs > 0, "no finished memoized runs")
    return (f"{runs} runs; max distinct/4n^2 = {worst_n:.3f} with n the family parameter, "
            f"{worst_size:.4f} with n the sequent size")


# ---------------------------------------------------------------------------

def test_criterion_1():
    criterion(1, c1_engine_agreement)


def test_criterion_2():
    criterion(2, c2_soundness_chain)


def test_criterion_3():
    criterion(3, c3_non_theorems)


def test_criterion_4():
    criterion(4, c4_cut_elimination)


def test_criterion_5(swap_runs):
    criterion(5, lambda: c5_complexity(*swap_runs))


def test_criterion_6():
    criterion(6, c6_normalizer)


def test_criterion_7():
    criterion(7, c7_bool_solver)


def test_criterion_8(swap_runs):
    criterion(8, lambda: c8_subformula_bound(swap_runs[0]))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
