"""End-to-end ADHC search and a seeded counterexample search.

Routes are tried in order: random balanced bipartitions with the
rotation-extension engine, the extremal route (witness, recognition,
preprocessing, distribution, splitting, connecting edges, reduction) and
finally the exact solver for small digraphs.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ._search import BudgetExceeded, SolverConfig, _component, _cut_structure
from .bipartite import bip_ham_cycle
from .digraph import Digraph, OrientedWalk, bipartite_view
from .exact import solve_adhc, walk_from_roles
from .extremal import (
    DistributionError,
    distribute_Z,
    extremal_witness,
    good_splitting,
    iter_connecting_pairs,
    preprocess,
    reduce_to_adhc,
)
from .families import gen_random_min_semidegree, recognize_exception
from .params import Params
from .verify import verify_walk

__all__ = [
    "PipelineReport",
    "heuristic_adhc",
    "TrialResult",
    "run_search_trials",
    "counterexample_search",
]

OUTCOMES = ("adhc", "exception", "absent_proven", "inconclusive")


@dataclass
class PipelineReport:
    """Result of :func:`heuristic_adhc`.

    ``outcome`` is one of ``adhc``, ``exception``, ``absent_proven`` or
    ``inconclusive``; ``route`` names the route that decided it.
    """

    outcome: str
    route: str | None = None
    certificate: OrientedWalk | None = None
    exception: str | None = None
    retries: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        cert = None
        if self.certificate is not None:
            cert = {"vertices": list(self.certificate.vertices),
                    "orientations": "".join("+" if b else "-" for b in self.certificate.orientations)}
        return {
            "deterministic": {
                "outcome": self.outcome,
                "route": self.route,
                "exception": self.exception,
                "certificate": cert,
                "retries": dict(self.retries),
                "notes": list(self.notes),
            },
            "measured": {"timings": {k: round(v, 6) for k, v in self.timings.items()}},
        }


def _may_be_hamiltonian(G, N: int, exhaustive_below: int = 500) -> bool:
    # connectivity always; bridges and cut vertices only while cheap
    if _component(G.adj, 1, G.vertices) != G.vertices:
        return False
    if N < exhaustive_below:
        bridges, cuts = _cut_structure(G.adj, G.vertices)
        return not (bridges or cuts)
    return True


def _route_random_split(D: Digraph, retries: int, rng: np.random.Generator,
                        cfg: SolverConfig) -> tuple[OrientedWalk | None, int]:
    N = D.order
    half = N // 2
    for attempt in range(retries):
        perm = rng.permutation(N)
        S = sum(1 << int(v) for v in perm[:half])
        T = D.all_mask & ~S
        G = bipartite_view(D, S, T)
        if G.min_degree() < 2 or not _may_be_hamiltonian(G, N):
            continue
        cyc = bip_ham_cycle(G, cfg, seed=int(rng.integers(2**63)), exact=False)
        if cyc is not None:
            return walk_from_roles(cyc, S, "cycle"), attempt + 1
    return None, retries


def _window(size: int, beta_n: float, lo_fixed: int, hi_fixed: int) -> range:
    # half sizes t with |size/2 - t| <= beta n and room for the fixed vertices
    lo = max(lo_fixed, int(np.ceil(size / 2 - beta_n - 1e-9)), 0)
    hi = min(size - hi_fixed, int(np.floor(size / 2 + beta_n + 1e-9)), size)
    return range(lo, hi + 1)


def _target_vectors(sizes: dict[str, int], fixed: dict[str, tuple[int, int]], case: str,
                    tail_side: int, beta_n: float, limit: int) -> list[dict[str, tuple[int, int]]]:
    """Half-size vectors meeting the side-size hypothesis of the reduction."""
    X1, X2, Y1, Y2 = (sizes[k] for k in ("X1", "X2", "Y1", "Y2"))
    win = {k: _window(sizes[k], beta_n, fixed[k][0], fixed[k][1]) for k in sizes}
    found = []
    for x1 in win["X1"]:
        for x2 in win["X2"]:
            for y1 in win["Y1"]:
                for y2 in win["Y2"]:
                    u1, v1 = x2 + y1, x1 + (Y1 - y1)
                    u2, v2 = (X1 - x1) + (Y2 - y2), (X2 - x2) + y2
                    if case == "i":
                        ok = u1 == v1 and u2 == v2
                    else:
                        U, V = {1: u1, 2: u2}, {1: v1, 2: v2}
                        i = tail_side
                        ok = U[i] == V[i] + 1 and V[3 - i] == U[3 - i] + 1
                    if ok:
                        dev = abs(2 * x1 - X1) + abs(2 * x2 - X2) + abs(2 * y1 - Y1) + abs(2 * y2 - Y2)
                        found.append((dev, (x1, x2, y1, y2)))
    found.sort()
    out = []
    for _, (x1, x2, y1, y2) in found[:limit]:
        out.append({"X1": (x1, X1 - x1), "X2": (x2, X2 - x2), "Y1": (y1, Y1 - y1), "Y2": (y2, Y2 - y2)})
    return out


def _route_extremal(D: Digraph, params: Params, seed: int | None, cfg: SolverConfig,
                    report: PipelineReport, max_pairs: int = 200,
                    max_targets: int = 3) -> OrientedWalk | None | str:
    """Returns a cycle, an exception label ("F1"/"F2"), or None."""
    N = D.order
    n = N / 2
    mode = "exact" if N <= 16 else "local_search"
    w = extremal_witness(D, params.alpha, mode=mode, seed=seed)
    if w is None:
        report.notes.append(f"no {params.alpha}-extremal witness ({mode})")
        return None
    rec = recognize_exception(D)
    if rec:
        return rec.kind
    part = preprocess(D, w, params.alpha)
    try:
        parts = distribute_Z(D, part, params.gamma)
    except DistributionError as e:
        report.notes.append(str(e))
        return None
    names = ("X1", "X2", "Y1", "Y2")
    masks = dict(zip(names, parts))
    sizes = {k: m.bit_count() for k, m in masks.items()}
    tried = 0
    for (u, v), (u2, v2), tag in iter_connecting_pairs(D, parts):
        if tried >= max_pairs:
            report.notes.append(f"stopped after {max_pairs} connecting pairs")
            break
        tried += 1
        P1 = P2 = 0
        for tail in (u, u2):
            name = next(k for k in names if masks[k] >> tail & 1)
            i = int(name[1])
            half = 3 - i if name[0] == "X" else i
            if half == 1:
                P1 |= 1 << tail
            else:
                P2 |= 1 << tail
        for head in (v, v2):
            name = next(k for k in names if masks[k] >> head & 1)
            i = int(name[1])
            half = i if name[0] == "X" else 3 - i
            if half == 1:
                P1 |= 1 << head
            else:
                P2 |= 1 << head
        fixed = {k: ((P1 & masks[k]).bit_count(), (P2 & masks[k]).bit_count()) for k in names}
        tname = next(k for k in names if masks[k] >> u & 1)
        tail_side = 3 - int(tname[1]) if tname[0] == "X" else int(tname[1])
        for targets in _target_vectors(sizes, fixed, tag, tail_side, params.beta * n, max_targets):
            s = good_splitting(D, parts, (P1, P2), targets, params.gamma, params.beta,
                               seed=seed, retries=20)
            if s is None:
                continue
            report.retries["splittings"] = report.retries.get("splittings", 0) + 1
            cyc = reduce_to_adhc(D, s, ((u, v), (u2, v2)), cfg, seed=seed)
            if cyc is not None:
                return cyc
    report.retries["connecting_pairs"] = tried
    return None


def heuristic_adhc(D: Digraph, params: Params | None = None, seed: int | None = 0, *,
                   retries: int = 50, cfg: SolverConfig | None = None,
                   routes: tuple[str, ...] = ("random_split", "extremal", "exact")) -> PipelineReport:
    """Search for an ADHC along the configured routes.

    Every reported cycle has passed :func:`verify_walk`.  ``absent_proven``
    only comes from the exact route; an ``exception`` outcome is reported when
    the digraph is recognised as one of the two exceptional digraphs and is
    too large for the exact route.
    """
    if D.order % 2:
        raise ValueError("the digraph must have an even number of vertices")
    params = params or Params()
    cfg = cfg or SolverConfig()
    rng = np.random.default_rng(seed)
    report = PipelineReport("inconclusive")
    N = D.order

    def done(outcome: str, route: str, cert: OrientedWalk | None = None) -> PipelineReport:
        if cert is not None and not verify_walk(D, cert, anti_directed=True, spanning=True):
            raise AssertionError("internal error: unverified certificate")
        report.outcome, report.route, report.certificate = outcome, route, cert
        return report

    if N < 4:
        report.notes.append("fewer than four vertices: no anti-directed cycle exists")
        return done("absent_proven", "exact")

    if "random_split" in routes:
        t0 = time.perf_counter()
        cyc, used = _route_random_split(D, retries, rng, cfg)
        report.timings["random_split"] = time.perf_counter() - t0
        report.retries["bipartitions"] = used
        if cyc is not None:
            return done("adhc", "random_split", cyc)

    if "extremal" in routes:
        t0 = time.perf_counter()
        res = _route_extremal(D, params, seed, cfg, report)
        report.timings["extremal"] = time.perf_counter() - t0
        if isinstance(res, OrientedWalk):
            return done("adhc", "extremal", res)
        if isinstance(res, str):
            if N > cfg.exact_cutoff or "exact" not in routes:
                report.exception = res
                return done("exception", "extremal")
            report.notes.append(f"recognised {res}; confirming with the exact route")

    if "exact" in routes and N <= cfg.exact_cutoff:
        t0 = time.perf_counter()
        try:
            cyc = solve_adhc(D, cfg)
        except BudgetExceeded as e:
            report.notes.append(str(e))
            cyc = None
            report.timings["exact"] = time.perf_counter() - t0
            return report
        report.timings["exact"] = time.perf_counter() - t0
        if cyc is not None:
            return done("adhc", "exact", cyc)
        return done("absent_proven", "exact")
    return report


@dataclass(frozen=True)
class TrialResult:
    index: int
    status: str  # "found", "absent", "exception", "budget"
    digraph: Digraph | None = None


def _trial(args) -> TrialResult:
    index, size, floor, state, node_limit = args
    D = gen_random_min_semidegree(size, floor, seed=state)
    try:
        cyc = solve_adhc(D, SolverConfig(node_limit=node_limit))
    except BudgetExceeded:
        return TrialResult(index, "budget")
    if cyc is not None:
        return TrialResult(index, "found")
    if recognize_exception(D):
        return TrialResult(index, "exception")
    return TrialResult(index, "absent", D)


def run_search_trials(size: int, trials: int, degree_floor: int, seed: int = 0,
                      jobs: int = 1, node_limit: int = 20_000_000) -> list[TrialResult]:
    """Per-trial outcomes, ordered by trial index and independent of ``jobs``."""
    if size % 2 or size < 4:
        raise ValueError("size must be even and at least 4")
    if not 0 <= degree_floor <= size - 1:
        raise ValueError("degree floor out of range")
    children = np.random.SeedSequence(seed).spawn(trials)
    args = [(i, size, degree_floor, int(c.generate_state(1)[0]), node_limit)
            for i, c in enumerate(children)]
    if jobs <= 1:
        return [_trial(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_trial, args, chunksize=max(1, trials // (8 * jobs))))


def counterexample_search(size: int, trials: int, degree_floor: int, seed: int = 0,
                          jobs: int = 1) -> list[Digraph]:
    """ADHC-free sampled digraphs that are not one of the two exceptions."""
    return [r.digraph for r in run_search_trials(size, trials, degree_floor, seed, jobs)
            if r.status == "absent"]
