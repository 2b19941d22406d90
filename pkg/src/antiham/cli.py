"""Command-line front end.

Exit codes: 0 positive result or verified, 1 proven negative, 2 invalid
input, 3 inconclusive (budget exhausted or heuristic gave up).

Machine-readable output is a JSON object with ``command``,
``deterministic`` and ``measured`` keys.  Everything that depends on wall
time lives under ``measured``; the rest is a function of argv and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import io
from ._search import BudgetExceeded, SolverConfig
from .absorbing import census
from .dense import maxcut_partition, two_in_star_packing
from .digraph import Digraph, TwoFactorCert, semi_degrees
from .exact import (
    SolveStats,
    solve_adhc,
    solve_adhp,
    solve_anti_two_factor,
    solve_directed_hc,
)
from .extremal import extremal_witness
from .families import (
    gen_complete,
    gen_F,
    gen_F1,
    gen_F2,
    gen_ladder,
    gen_oriented_cycle,
    gen_random_digraph,
    gen_random_min_semidegree,
)
from .naive import solve_adhc_naive
from .params import Params
from .pipeline import heuristic_adhc, run_search_trials
from .verify import verify_two_factor, verify_walk

__all__ = ["main", "EXIT_FOUND", "EXIT_NEGATIVE", "EXIT_INVALID", "EXIT_INCONCLUSIVE", "BENCH_SUITES"]

EXIT_FOUND = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3

FAMILIES = ("f", "f1", "f2", "ladder", "aladder", "cycle", "complete", "random")


class UsageError(ValueError):
    pass


def _emit(args, command: str, det: dict[str, Any], measured: dict[str, Any] | None = None) -> None:
    measured = measured or {}
    if args.format == "json":
        doc = {"command": command, "deterministic": det, "measured": measured}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return
    for k in sorted(det):
        sys.stdout.write(f"{k}: {_text(det[k])}\n")
    for k in sorted(measured):
        sys.stdout.write(f"[measured] {k}: {_text(measured[k])}\n")


def _text(v: Any) -> str:
    if isinstance(v, str):
        return v.rstrip("\n").replace("\n", " / ")
    return json.dumps(v, sort_keys=True)


def _cert_text(kind: str, walks) -> str:
    return io.serialize_certificate(kind, walks).decode()


def _write_cert(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _cfg(args) -> SolverConfig:
    budget = getattr(args, "budget", None)
    return SolverConfig(node_limit=budget) if budget else SolverConfig()


def _pair(s: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in s.split(","))
    except ValueError:
        raise UsageError(f"--pair expects 'x,y', got {s!r}") from None
    return x, y


# ------------------------------------------------------------------ commands

def cmd_gen(args) -> int:
    fam, n = args.family, args.n
    if fam != "cycle" and n is None:
        raise UsageError(f"--n is required for family {fam!r}")
    if fam == "f":
        if args.k is None:
            raise UsageError("--k is required for family 'f'")
        D = gen_F(n, args.k)
    elif fam == "f1":
        D = gen_F1(n)
    elif fam == "f2":
        D = gen_F2(n)
    elif fam == "ladder":
        # undirected ladder stored with both orientations of every edge
        A = gen_ladder(n, directed=True)
        D = A.with_arcs((v, u) for u, v in A.arcs())
    elif fam == "aladder":
        D = gen_ladder(n, directed=True)
    elif fam == "cycle":
        if not args.pattern:
            raise UsageError("--pattern is required for family 'cycle'")
        D = gen_oriented_cycle(args.pattern)
        if n is not None and n != D.order:
            raise UsageError(f"--n {n} disagrees with the pattern length {D.order}")
    elif fam == "complete":
        D = gen_complete(n)
    else:
        if args.d is not None:
            D = gen_random_min_semidegree(n, args.d, seed=args.seed)
        else:
            if not 0 <= args.p <= 1:
                raise UsageError("--p must lie in [0, 1]")
            D = gen_random_digraph(n, args.p, seed=args.seed)
    data = io.serialize(D)
    if args.output == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return EXIT_FOUND
    Path(args.output).write_bytes(data)
    _emit(args, "gen", {"family": fam, "order": D.order, "arcs": D.num_arcs(),
                        "min_semidegree": semi_degrees(D)[2], "output": args.output})
    return EXIT_FOUND


def cmd_solve(args) -> int:
    D = io.read_digraph(args.file)
    if args.mode == "naive" and args.what != "adhc":
        raise UsageError("--mode naive is only available for --what adhc")
    if args.max_cycles is not None and args.what != "2factor":
        raise UsageError("--max-cycles only applies to --what 2factor")
    if args.max_cycles is not None and args.max_cycles < 1:
        raise UsageError("--max-cycles must be at least 1")
    cfg = _cfg(args)
    stats = SolveStats()
    det: dict[str, Any] = {"what": args.what, "mode": args.mode, "order": D.order}
    t0 = time.perf_counter()
    try:
        if args.mode == "naive":
            res = solve_adhc_naive(D)
        elif args.what == "adhc":
            res = solve_adhc(D, cfg, stats=stats)
        elif args.what == "adhp":
            res = solve_adhp(D, cfg, stats=stats)
        elif args.what == "2factor":
            res = solve_anti_two_factor(D, args.max_cycles, cfg, stats=stats)
        else:
            res = solve_directed_hc(D, cfg, stats=stats)
    except BudgetExceeded as e:
        det.update(result="budget_exceeded", nodes=e.nodes, certificate=None)
        _emit(args, "solve", det, {"seconds": round(time.perf_counter() - t0, 6)})
        return EXIT_INCONCLUSIVE
    elapsed = time.perf_counter() - t0
    if args.mode == "exact":
        det["nodes"] = stats.nodes
    if res is None:
        det.update(result="absent", certificate=None)
        _emit(args, "solve", det, {"seconds": round(elapsed, 6)})
        return EXIT_NEGATIVE
    kind = {"adhc": "adhc", "adhp": "adp", "2factor": "2factor", "dhc": "dhc"}[args.what]
    text = _cert_text(kind, res)
    _write_cert(args.cert, text)
    det.update(result="found", certificate=text)
    _emit(args, "solve", det, {"seconds": round(elapsed, 6)})
    return EXIT_FOUND


def cmd_verify(args) -> int:
    D = io.read_digraph(args.file)
    kind, walks = io.parse_certificate(Path(args.cert).read_text())
    det: dict[str, Any] = {"kind": kind, "walks": len(walks)}
    if kind == "2factor":
        if not walks:
            raise UsageError("2factor certificate lists no cycles")
        verdict = verify_two_factor(D, TwoFactorCert(tuple(walks)))
    else:
        if len(walks) != 1:
            raise UsageError(f"{kind} certificate must contain exactly one walk")
        w = walks[0]
        if kind == "adhc":
            verdict = verify_walk(D, w, anti_directed=True, spanning=True)
        elif kind == "dhc":
            verdict = verify_walk(D, w, directed=True, spanning=True)
        else:
            verdict = verify_walk(D, w, anti_directed=True)
            if verdict:
                det["spanning"] = len(w.vertices) == D.order
                det["proper"] = bool(verify_walk(D, w, anti_directed=True, proper=True))
    det["valid"] = verdict.ok
    det["reason"] = verdict.reason
    _emit(args, "verify", det)
    return EXIT_FOUND if verdict else EXIT_NEGATIVE


def cmd_census(args) -> int:
    D = io.read_digraph(args.file)
    pairs = [_pair(args.pair)] if args.pair else None
    t0 = time.perf_counter()
    counts = census(D, args.what, pairs, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    values = list(counts.values())
    det = {
        "what": args.what,
        "order": D.order,
        "pairs": len(counts),
        "min": min(values, default=0),
        "max": max(values, default=0),
        "counts": {f"{x},{y}": c for (x, y), c in counts.items()},
    }
    _emit(args, "census", det, {"seconds": round(elapsed, 6)})
    return EXIT_FOUND


def cmd_extremal(args) -> int:
    D = io.read_digraph(args.file)
    mode = "exact" if args.mode == "exact" else "local_search"
    w = extremal_witness(D, args.alpha, mode=mode, seed=args.seed)
    det: dict[str, Any] = {"alpha": args.alpha, "mode": args.mode, "order": D.order}
    if w is None:
        det["witness"] = None
        _emit(args, "extremal", det)
        return EXIT_NEGATIVE if mode == "exact" else EXIT_INCONCLUSIVE
    am, bm = w.a_mask, w.b_mask
    det["witness"] = {
        "A": list(w.A),
        "B": list(w.B),
        "max_out_A_to_B": max((D.out_degree(v, bm) for v in w.A), default=0),
        "max_in_B_from_A": max((D.in_degree(v, am) for v in w.B), default=0),
    }
    _emit(args, "extremal", det)
    return EXIT_FOUND


def cmd_stars(args) -> int:
    D = io.read_digraph(args.file)
    sp = two_in_star_packing(D)
    det = {
        "order": D.order,
        "count": sp.count,
        "bound": sp.bound,
        "meets_bound": sp.count >= sp.bound,
        "stars": [list(s) for s in sp.stars],
        "edges": [list(e) for e in sp.edges],
    }
    _emit(args, "stars", det)
    return EXIT_FOUND


def cmd_maxcut(args) -> int:
    D = io.read_digraph(args.file)
    X = io.parse_vertex_set(args.x)
    Y = io.parse_vertex_set(args.y)
    if any(v >= D.order for v in X + Y):
        raise UsageError("vertex set mentions a vertex outside the digraph")
    xs, ys = maxcut_partition(D, X, Y, args.c)
    _emit(args, "maxcut", {"c": args.c, "X": xs, "Y": ys})
    return EXIT_FOUND


def cmd_pipeline(args) -> int:
    D = io.read_digraph(args.file)
    if args.report:
        args.format = args.report
    if args.retries < 0:
        raise UsageError("--retries must be non-negative")
    params = Params(**{k: getattr(args, k) for k in ("alpha", "beta", "gamma", "lam", "c")
                       if getattr(args, k) is not None})
    rep = heuristic_adhc(D, params, seed=args.seed, retries=args.retries)
    doc = rep.to_dict()
    det = doc["deterministic"]
    det["order"] = D.order
    if rep.certificate is not None:
        text = _cert_text("adhc", rep.certificate)
        _write_cert(args.cert, text)
    _emit(args, "pipeline", det, doc["measured"])
    return {"adhc": EXIT_FOUND, "exception": EXIT_NEGATIVE,
            "absent_proven": EXIT_NEGATIVE}.get(rep.outcome, EXIT_INCONCLUSIVE)


def cmd_search(args) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    t0 = time.perf_counter()
    results = run_search_trials(args.size, args.trials, args.floor, seed=args.seed,
                                jobs=args.jobs, node_limit=args.budget or 20_000_000)
    elapsed = time.perf_counter() - t0
    tally = {s: 0 for s in ("found", "absent", "exception", "budget")}
    for r in results:
        tally[r.status] += 1
    hits = [r for r in results if r.status == "absent"]
    written = []
    if args.out_dir and hits:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in hits:
            p = out / f"counterexample_{args.size}_{args.seed}_{r.index}.dg"
            io.write_digraph(r.digraph, p)
            written.append(str(p))
    det = {"size": args.size, "trials": args.trials, "floor": args.floor, "seed": args.seed,
           "outcomes": tally, "counterexample_trials": [r.index for r in hits], "written": written}
    _emit(args, "search", det, {"seconds": round(elapsed, 6)})
    return EXIT_INCONCLUSIVE if tally["budget"] else EXIT_FOUND


def _bench_route1(seed: int, runs: int) -> tuple[dict, dict]:
    children = np.random.SeedSequence(seed).spawn(runs)
    ok, times = [], []
    for c in children:
        s = int(c.generate_state(1)[0])
        D = gen_random_digraph(2000, 0.75, seed=s)
        t0 = time.perf_counter()
        rep = heuristic_adhc(D, seed=s, routes=("random_split",))
        times.append(time.perf_counter() - t0)
        good = rep.outcome == "adhc" and bool(
            verify_walk(D, rep.certificate, anti_directed=True, spanning=True))
        ok.append(good)
    det = {"runs": runs, "success": ok, "success_rate": sum(ok) / runs if runs else 0.0}
    meas = {"seconds": [round(t, 6) for t in times],
            "median_seconds": round(float(np.median(times)), 6) if times else None}
    return det, meas


def _bench_exact12(seed: int, runs: int) -> tuple[dict, dict]:
    del seed, runs  # the suite is exhaustive and deterministic
    rows, times = [], {}
    cases: list[tuple[str, Digraph]] = []
    for N in range(4, 13, 2):
        for k in range(1, N // 2 + 1):
            cases.append((f"F({N},{k})", gen_F(N, k)))
        if N >= 6:
            cases.append((f"F1({N})", gen_F1(N)))
            cases.append((f"F2({N})", gen_F2(N)))
    for name, D in cases:
        st = SolveStats()
        t0 = time.perf_counter()
        cyc = solve_adhc(D, stats=st)
        times[name] = round(time.perf_counter() - t0, 6)
        rows.append({"case": name, "adhc": cyc is not None, "nodes": st.nodes})
    return {"cases": rows}, {"seconds": times}


BENCH_SUITES: dict[str, Callable[[int, int], tuple[dict, dict]]] = {
    "route1-2000": _bench_route1,
    "exact-12": _bench_exact12,
}


def cmd_bench(args) -> int:
    if not args.suite:
        raise UsageError("bench needs a suite name; known suites: " + ", ".join(BENCH_SUITES))
    if args.suite not in BENCH_SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known suites: " + ", ".join(BENCH_SUITES))
    if args.runs < 1:
        raise UsageError("--runs must be positive")
    det, meas = BENCH_SUITES[args.suite](args.seed, args.runs)
    det = {"suite": args.suite, "seed": args.seed, **det}
    _emit(args, "bench", det, meas)
    return EXIT_FOUND


# ------------------------------------------------------------------ parser

def _positive_int(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a value given before the subcommand from being reset
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=_positive_int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="antiham", description="Anti-directed Hamiltonicity toolkit.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a digraph")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--pattern")
    g.add_argument("--d", type=int, help="minimum semi-degree for family 'random'")
    g.add_argument("--p", type=float, default=0.5, help="arc probability for family 'random'")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", parents=[common], help="exact solvers")
    s.add_argument("file")
    s.add_argument("--what", choices=("adhc", "adhp", "2factor", "dhc"), required=True)
    s.add_argument("--max-cycles", type=int)
    s.add_argument("--mode", choices=("exact", "naive"), default="exact")
    s.add_argument("--budget", type=_positive_int)
    s.add_argument("--cert")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a certificate")
    v.add_argument("file")
    v.add_argument("cert")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", parents=[common], help="count absorbers or connectors")
    c.add_argument("file")
    c.add_argument("--what", choices=("absorbers", "connectors"), required=True)
    c.add_argument("--pair")
    c.set_defaults(func=cmd_census)

    e = sub.add_parser("extremal", parents=[common], help="search for an extremal witness")
    e.add_argument("file")
    e.add_argument("--alpha", type=float, required=True)
    e.add_argument("--mode", choices=("exact", "search"), default="exact")
    e.set_defaults(func=cmd_extremal)

    st = sub.add_parser("stars", parents=[common], help="greedy 2-in-star packing")
    st.add_argument("file")
    st.set_defaults(func=cmd_stars)

    m = sub.add_parser("maxcut", parents=[common], help="clean a dense pair")
    m.add_argument("file")
    m.add_argument("--x", required=True)
    m.add_argument("--y", required=True)
    m.add_argument("--c", type=float, required=True)
    m.set_defaults(func=cmd_maxcut)

    pl = sub.add_parser("pipeline", parents=[common], help="heuristic ADHC pipeline")
    pl.add_argument("file")
    pl.add_argument("--retries", type=int, default=50)
    pl.add_argument("--cert")
    pl.add_argument("--report", choices=("json", "text"))
    for name in ("alpha", "beta", "gamma", "lam", "c"):
        pl.add_argument(f"--{name}", type=float)
    pl.set_defaults(func=cmd_pipeline)

    se = sub.add_parser("search", parents=[common], help="seeded counterexample search")
    se.add_argument("--size", type=int, required=True)
    se.add_argument("--trials", type=int, required=True)
    se.add_argument("--floor", type=int, required=True)
    se.add_argument("--budget", type=_positive_int)
    se.add_argument("--out-dir")
    se.set_defaults(func=cmd_search)

    b = sub.add_parser("bench", parents=[common], help="timing suites")
    b.add_argument("suite", nargs="?", default="")
    b.add_argument("--runs", type=int, default=10)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse reports usage errors with code 2
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"antiham {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
