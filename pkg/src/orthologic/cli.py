"""Command-line entry point: ``orthologic <command> ...``.

Exit codes: 0 provable / valid / check ok, 1 not provable / counterexample /
rejected proof, 2 usage or parse error, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as bench_mod
from .cutelim import CutElimError, eliminate_cuts
from .normalize import NormalizeError, normalize, normalize_certified
from .proofs import ProofError, check_proof, dumps, format_sequent, loads, proof_depth, proof_size
from .search import ENGINES, Prover, decide_terms
from .semantics import LATTICES, get_lattice, leq_semantic
from .tauto import TautoStats, iff, tauto
from .terms import (Join, L, Not, ParseError, R, parse_goal, parse_term, print_term,
                    var_name)

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_arg(text: str) -> str:
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from None
    return text


def _goal(text):
    syms = {}
    s, op, t = parse_goal(_read_arg(text), syms)
    return s, op, t, {i: name for name, i in syms.items()}


def _term(text):
    syms = {}
    t = parse_term(_read_arg(text), syms)
    return t, {i: name for name, i in syms.items()}


def _read_proof(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return loads(text)
    except (ValueError, ParseError, TypeError) as exc:
        raise UsageError(f"{path}: not a proof file ({exc})") from None


def _assignment(v, names):
    return ", ".join(f"{names.get(x, var_name(x))}={val}" for x, val in sorted(v.items()))


# ---------------------------------------------------------------------------
# commands

def cmd_decide(args, out):
    s, op, t, names = _goal(args.goal)
    verdict = decide_terms(s, t, op, args.engine, args.fuel)
    print("provable" if verdict.provable else "not provable", file=out)
    if args.stats:
        st = verdict.stats
        print(f"node visits: {st.node_visits}\nmemo hits: {st.memo_hits}\n"
              f"distinct sequents: {st.distinct}", file=out)
    if not verdict.provable and args.lattice:
        ol = get_lattice(args.lattice)
        pairs = [(s, t)] + ([(t, s)] if op == "=" else [])
        for a, b in pairs:
            res = leq_semantic(a, b, ol)
            if not res.holds:
                labels = {x: ol.labels[val] for x, val in res.witness.items()}
                print(f"counter-valuation in {ol.name}: {_assignment(labels, names)}", file=out)
                break
        else:
            print(f"no counter-valuation found in {ol.name}", file=out)
    return OK if verdict.provable else NEGATIVE


def cmd_prove(args, out):
    s, op, t, _ = _goal(args.goal)
    pv = Prover()
    proofs = [pv.prove(L(s), R(t))]
    if op == "=":
        proofs.append(pv.prove(L(t), R(s)))
    if any(p is None for p in proofs):
        print("not provable", file=out)
        return NEGATIVE
    if args.out is None:
        for p in proofs:
            out.write(dumps(p))
        return OK
    paths = [Path(args.out)]
    if len(proofs) == 2:
        paths.append(paths[0].with_name(paths[0].stem + ".converse" + paths[0].suffix))
    for p, path in zip(proofs, paths):
        path.write_text(dumps(p))
        print(f"wrote {path} ({proof_size(p)} nodes)", file=out)
    return OK


def cmd_check(args, out):
    p = _read_proof(args.proof)
    try:
        concl = check_proof(p)
    except ProofError as exc:
        print(f"invalid: {exc}", file=out)
        return NEGATIVE
    print(f"ok: {format_sequent(concl)}", file=out)
    return OK


def cmd_cutelim(args, out):
    p = _read_proof(args.proof)
    try:
        check_proof(p)
    except ProofError as exc:
        print(f"invalid: {exc}", file=out)
        return NEGATIVE
    q = eliminate_cuts(p)
    report = sys.stderr if args.out is None else out
    print(f"before: size {proof_size(p)} depth {proof_depth(p)}", file=report)
    print(f"after: size {proof_size(q)} depth {proof_depth(q)}", file=report)
    if args.out is None:
        out.write(dumps(q))
    else:
        Path(args.out).write_text(dumps(q))
    return OK


def cmd_normalize(args, out):
    t, names = _term(args.term)
    if not args.certify:
        print(print_term(normalize(t), names), file=out)
        return OK
    r, p1, p2 = normalize_certified(t)
    print(print_term(r, names), file=out)
    prefix = args.prefix
    for tag, p in (("leq", p1), ("geq", p2)):
        path = Path(f"{prefix}.{tag}.json")
        path.write_text(dumps(p))
        print(f"wrote {path}", file=out)
    return OK


def cmd_tauto(args, out):
    text = _read_arg(args.formula)
    syms = {}
    try:
        s, op, t = parse_goal(text, syms)
        f = iff(s, t) if op == "=" else Join(Not(s), t)
    except ParseError:
        syms = {}
        f = parse_term(text, syms)
    names = {i: n for n, i in syms.items()}
    st = TautoStats()
    res = tauto(f, simplify=not args.no_simplify, stats=st)
    if res.valid:
        print("Valid", file=out)
    else:
        print(f"Counterexample: {_assignment(res.counterexample, names)}", file=out)
    if args.stats:
        print(f"branches: {st.branches}\nleaves: {st.leaves}\nnormalizations: {st.normalizations}\n"
              f"queries: {st.queries}", file=out)
    return OK if res.valid else NEGATIVE


def _sizes(text: str):
    try:
        parts = [int(x) for x in text.split(":")]
    except ValueError:
        raise UsageError(f"bad size range {text!r}") from None
    if len(parts) == 1:
        return parts
    if len(parts) in (2, 3):
        lo, hi = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 1
        if step <= 0:
            raise UsageError("step must be positive")
        return list(range(lo, hi + 1, step))
    raise UsageError(f"bad size range {text!r}")


def cmd_bench(args, out):
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in engines:
        if e not in bench_mod.BENCH_ENGINES:
            raise UsageError(f"unknown engine {e!r}")
    if args.family not in ("swap-pairs", "hard-random"):
        raise UsageError(f"unknown family {args.family!r}")
    sizes = _sizes(args.n)
    if args.family == "swap-pairs" and any(n < 2 or n % 2 for n in sizes):
        raise UsageError("swap-pairs sizes must be even and >= 2")

    def progress(r):
        t = "timeout" if r.timeout else f"{r.seconds:.4f}s"
        print(f"{r.engine:12s} n={r.n:<4d} rep={r.repeat} {t} visits={r.node_visits}", file=out,
              flush=True)

    recs = bench_mod.run_bench(engines, args.family, sizes, args.repeats, args.timeout,
                               progress=progress)
    if args.csv:
        bench_mod.write_csv(recs, args.csv)
    if args.plot:
        bench_mod.write_svg(recs, args.plot, f"{args.family}: median time vs n")
    for e in engines:
        try:
            slope = bench_mod.fit_degree([r for r in recs if r.engine == e])
            print(f"{e}: log-log slope {slope:.2f}", file=out)
        except bench_mod.InsufficientData as exc:
            print(f"{e}: no slope ({exc})", file=out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthologic", description="Orthologic toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide 's <= t' or 's = t'")
    p.add_argument("goal", help="goal text, or @file")
    p.add_argument("--engine", choices=ENGINES, default="ids")
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--lattice", choices=sorted(LATTICES), default=None,
                   help="on failure, look for a counter-valuation in this lattice")
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("prove", help="emit a cut-free proof as JSON")
    p.add_argument("goal")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("check", help="check a proof file")
    p.add_argument("proof")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("cutelim", help="eliminate cuts from a proof file")
    p.add_argument("proof")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_cutelim)

    p = sub.add_parser("normalize", help="print the normal form of a term")
    p.add_argument("term")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--prefix", default="normalize", help="file prefix for --certify proofs")
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("tauto", help="classical validity of a term or goal")
    p.add_argument("formula")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--no-simplify", action="store_true", help="branch without normalizing")
    p.set_defaults(fn=cmd_tauto)

    p = sub.add_parser("bench", help="time engines on a benchmark family")
    p.add_argument("--engines", default="ids,memo-map,memo-list")
    p.add_argument("--family", default="swap-pairs")
    p.add_argument("--n", default="2:30:2", help="size, or lo:hi[:step]")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--csv", default=None)
    p.add_argument("--plot", default=None)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args, out)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (CutElimError, NormalizeError, ProofError, AssertionError, RuntimeError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
