"""Benchmark families, timing harness and log-log slope fitting."""

from __future__ import annotations

import csv
import math
import multiprocessing as mp
import random
import statistics
import time
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .terms import Join, L, Meet, Not, R, Term, Var, sequent_size

__all__ = ["gen_swap_pairs", "GenParams", "gen_hard_random", "hard_corpus", "BenchRecord",
           "run_bench", "run_one", "fit_degree", "InsufficientData", "median_times",
           "write_csv", "read_csv", "write_svg", "BENCH_ENGINES"]

# decide engines, the two ids backends, and the boolean solver with/without normalization
BENCH_ENGINES = ("naive", "opti", "memo-list", "memo-map", "ids", "ids-python", "ids-compiled",
                 "tauto", "tauto-plain")

CSV_FIELDS = ["engine", "family", "n", "repeat", "seconds", "node_visits", "memo_hits", "verdict",
              "timeout"]


def gen_swap_pairs(n: int) -> Tuple[Term, Term]:
    """``(x1|x2)&...&(x(n-1)|xn)`` and the same with every pair swapped."""
    if n < 2 or n % 2:
        raise ValueError("swap-pairs needs an even n >= 2")
    lhs = reduce(Meet, [Join(Var(i), Var(i + 1)) for i in range(1, n, 2)])
    rhs = reduce(Meet, [Join(Var(i + 1), Var(i)) for i in range(1, n, 2)])
    return lhs, rhs


@dataclass(frozen=True)
class GenParams:
    vars: int = 20
    literals: int = 192
    seed: int = 0
    neg_prob: float = 0.3     # chance of negating an inner node

    @property
    def depth(self) -> int:
        return max(0, math.ceil(math.log2(self.literals)))


def gen_hard_random(p: GenParams) -> Term:
    """Balanced random &/|/! tree with exactly ``p.literals`` literal occurrences."""
    if p.literals < 1 or p.vars < 1:
        raise ValueError("need at least one variable and one literal")
    rng = random.Random(p.seed)
    lits = []
    for _ in range(p.literals):
        v = Var(rng.randint(1, p.vars))
        lits.append(Not(v) if rng.random() < 0.5 else v)

    def build(lo, hi):
        if hi - lo == 1:
            return lits[lo]
        mid = (lo + hi) // 2
        mk = Meet if rng.random() < 0.5 else Join
        t = mk(build(lo, mid), build(mid, hi))
        return Not(t) if rng.random() < p.neg_prob else t

    return build(0, len(lits))


def hard_corpus(count: int = 80, vars: int = 20, literals: int = 192, seed: int = 0) -> List[Term]:
    return [gen_hard_random(GenParams(vars, literals, seed + i)) for i in range(count)]


@dataclass
class BenchRecord:
    engine: str
    family: str
    n: int
    repeat: int
    seconds: Optional[float]
    node_visits: int = 0
    memo_hits: int = 0
    verdict: Optional[bool] = None
    timeout: bool = False
    # not written to CSV: largest distinct-sequent count and input size over the runs
    extra: Dict[str, int] = field(default_factory=dict)

    def row(self):
        return {"engine": self.engine, "family": self.family, "n": self.n, "repeat": self.repeat,
                "seconds": "" if self.seconds is None else f"{self.seconds:.6f}",
                "node_visits": self.node_visits, "memo_hits": self.memo_hits,
                "verdict": "" if self.verdict is None else str(self.verdict).lower(),
                "timeout": str(self.timeout).lower()}


# ---------------------------------------------------------------------------
# single measurements

def run_one(engine: str, family: str, n: int) -> dict:
    """Run one instance in-process and return timing and counters."""
    from . import kernel
    from .search import Stats, decide_sequent, run_deep
    from .tauto import TautoStats, tauto, tauto_eq

    out = {"node_visits": 0, "memo_hits": 0, "distinct_max": 0, "size": 0}
    if family == "swap-pairs":
        s, t = gen_swap_pairs(n)
        goals = [(L(s), R(t)), (L(t), R(s))]
        if engine.startswith("tauto"):
            st = TautoStats()
            t0 = time.perf_counter()
            res = tauto_eq(s, t, simplify=engine == "tauto", stats=st)
            out["seconds"] = time.perf_counter() - t0
            out["verdict"] = res.valid
            out["node_visits"] = st.branches
            return out

        def work():
            verdict = True
            for g, d in goals:
                st = Stats()
                if engine in ("ids-python", "ids-compiled"):
                    backend = engine.split("-")[1]
                    if backend not in kernel.BACKENDS:
                        raise RuntimeError("compiled kernel is not available")
                    ok = kernel.decide_annotated(g, d, None, st, backend)
                else:
                    ok = decide_sequent(g, d, engine, None, st)
                out["node_visits"] += st.node_visits
                out["memo_hits"] += st.memo_hits
                out["distinct_max"] = max(out["distinct_max"], st.distinct)
                out["size"] = max(out["size"], sequent_size(g, d))
                verdict = verdict and ok
                if not verdict:
                    break
            return verdict

        t0 = time.perf_counter()
        out["verdict"] = run_deep(work)
        out["seconds"] = time.perf_counter() - t0
        return out
    if family == "hard-random":
        f = gen_hard_random(GenParams(seed=n))
        st = TautoStats()
        if not engine.startswith("tauto"):
            raise ValueError("the hard-random family is run with tauto or tauto-plain")
        t0 = time.perf_counter()
        res = tauto(f, simplify=engine == "tauto", stats=st)
        out["seconds"] = time.perf_counter() - t0
        out["verdict"] = res.valid
        out["node_visits"] = st.branches
        out["memo_hits"] = st.queries
        return out
    raise ValueError(f"unknown family {family!r}")


def _child(conn, engine, family, n):
    try:
        conn.send(("ok", run_one(engine, family, n)))
    except BaseException as exc:
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def _measure(engine, family, n, timeout):
    """Run in a forked process; returns the result dict or None on timeout."""
    ctx = mp.get_context("fork")
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_child, args=(child, engine, family, n), daemon=True)
    proc.start()
    child.close()
    try:
        if not parent.poll(timeout):
            return None
        status, payload = parent.recv()
    finally:
        if proc.is_alive():
            proc.kill()
        proc.join()
        parent.close()
    if status != "ok":
        raise RuntimeError(f"{engine} on {family} n={n} failed: {payload}")
    return payload


def run_bench(engines: Sequence[str], family: str, sizes: Iterable[int], repeats: int = 3,
              timeout: float = 30.0, warmup: bool = True, progress=None) -> List[BenchRecord]:
    """Time every engine on every size; one record per (engine, size, repeat).

    Each run happens in a fresh forked process killed after ``timeout``
    seconds.  On the swap-pairs family an engine that times out at some size
    is not run on larger sizes (those records are marked as timeouts).
    """
    sizes = list(sizes)
    records: List[BenchRecord] = []
    for engine in engines:
        if warmup and sizes:
            _measure(engine, family, sizes[0], timeout)
        dead = False
        for n in sizes:
            for rep in range(repeats):
                res = None if dead else _measure(engine, family, n, timeout)
                if res is None:
                    rec = BenchRecord(engine, family, n, rep, None, timeout=True)
                    if family == "swap-pairs":
                        dead = True
                else:
                    rec = BenchRecord(engine, family, n, rep, res["seconds"], res["node_visits"],
                                      res["memo_hits"], res["verdict"], False,
                                      {"distinct_max": res.get("distinct_max", 0),
                                       "size": res.get("size", 0)})
                records.append(rec)
                if progress is not None:
                    progress(rec)
    return records


# ---------------------------------------------------------------------------
# analysis

class InsufficientData(ValueError):
    pass


def median_times(records: Iterable[BenchRecord]) -> Dict[int, float]:
    """Median seconds per size over the non-timed-out runs (sizes with any timeout are dropped)."""
    by_n: Dict[int, List[Optional[float]]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(None if r.timeout else r.seconds)
    return {n: statistics.median(ts) for n, ts in sorted(by_n.items()) if None not in ts}


def fit_degree(records: Iterable[BenchRecord], noise_floor: float = 1e-3,
               min_sizes: int = 5) -> float:
    """Least-squares slope of log(time) against log(n) over median times."""
    pts = [(n, t) for n, t in median_times(records).items() if t >= noise_floor and n > 0]
    if len(pts) < min_sizes:
        raise InsufficientData(f"need {min_sizes} sizes above {noise_floor}s, have {len(pts)}")
    xs = [math.log(n) for n, _ in pts]
    ys = [math.log(t) for _, t in pts]
    return statistics.linear_regression(xs, ys).slope


def write_csv(records: Iterable[BenchRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        for r in records:
            w.writerow(r.row())


def read_csv(path) -> List[BenchRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(BenchRecord(row["engine"], row["family"], int(row["n"]), int(row["repeat"]),
                                   float(row["seconds"]) if row["seconds"] else None,
                                   int(row["node_visits"]), int(row["memo_hits"]),
                                   None if row["verdict"] == "" else row["verdict"] == "true",
                                   row["timeout"] == "true"))
    return out


_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"]


def write_svg(records: Iterable[BenchRecord], path, title: str = "") -> None:
    """Log-log line chart of median time against n, one line per engine."""
    records = list(records)
    series: Dict[str, Dict[int, float]] = {}
    for eng in dict.fromkeys(r.engine for r in records):
        med = {n: t for n, t in median_times([r for r in records if r.engine == eng]).items() if t > 0}
        if med:
            series[eng] = med
    W, H, pad = 640, 420, 60
    pts = [(n, t) for s in series.values() for n, t in s.items()]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">',
             f'<rect width="{W}" height="{H}" fill="white"/>']
    if pts:
        lx = [math.log10(n) for n, _ in pts]
        ly = [math.log10(t) for _, t in pts]
        x0, x1 = min(lx), max(lx) if max(lx) > min(lx) else min(lx) + 1
        y0, y1 = min(ly), max(ly) if max(ly) > min(ly) else min(ly) + 1

        def sx(v):
            return pad + (math.log10(v) - x0) / (x1 - x0) * (W - 2 * pad)

        def sy(v):
            return H - pad - (math.log10(v) - y0) / (y1 - y0) * (H - 2 * pad)

        parts.append(f'<line x1="{pad}" y1="{H - pad}" x2="{W - pad}" y2="{H - pad}" stroke="black"/>')
        parts.append(f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{H - pad}" stroke="black"/>')
        for e in range(math.floor(y0), math.ceil(y1) + 1):
            v = 10.0 ** e
            if y0 <= e <= y1:
                parts.append(f'<text x="{pad - 8}" y="{sy(v):.1f}" text-anchor="end">1e{e}s</text>')
        for n in sorted({n for n, _ in pts}):
            parts.append(f'<text x="{sx(n):.1f}" y="{H - pad + 16}" text-anchor="middle">{n}</text>')
        for i, (eng, med) in enumerate(series.items()):
            col = _COLORS[i % len(_COLORS)]
            path_pts = " ".join(f"{sx(n):.1f},{sy(t):.1f}" for n, t in sorted(med.items()))
            parts.append(f'<polyline fill="none" stroke="{col}" stroke-width="2" points="{path_pts}"/>')
            parts.append(f'<text x="{W - pad + 4}" y="{pad + 16 * i}" fill="{col}">{eng}</text>')
    parts.append(f'<text x="{W / 2}" y="20" text-anchor="middle">{title or "time vs n (log-log)"}</text>')
    parts.append(f'<text x="{W / 2}" y="{H - 15}" text-anchor="middle">n</text>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
