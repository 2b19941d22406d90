"""Exact solvers for anti-directed Hamiltonian cycles/paths, anti-directed
2-factors, directed Hamiltonian cycles and longest proper anti-directed paths.

The anti-directed solvers rest on one reduction: in an anti-directed cycle or
path every vertex is either a source (both arcs leave it) or a sink (both
arcs enter it), so a spanning anti-directed structure exists iff some
source/sink assignment ``(S, T)`` makes ``bipartite_view(D, S, T)`` contain the
corresponding undirected structure.  Roles are branched on with degree-based
propagation; each complete assignment is handed to the cycle-cover search.
"""

from __future__ import annotations

from typing import Callable

from ._search import Budget, BudgetExceeded, SolverConfig, cover_cycles
from .digraph import Digraph, OrientedWalk, TwoFactorCert, iter_bits
from .verify import verify_two_factor, verify_walk

__all__ = [
    "SolverConfig",
    "BudgetExceeded",
    "SolveStats",
    "solve_adhc",
    "solve_adhp",
    "solve_anti_two_factor",
    "solve_directed_hc",
    "longest_proper_adp",
    "walk_from_roles",
    "twin_classes",
]


class SolveStats:
    """Mutable counters filled in by a solver call when passed as ``stats=``."""

    def __init__(self):
        self.nodes = 0
        self.leaves = 0

    def __repr__(self) -> str:
        return f"SolveStats(nodes={self.nodes}, leaves={self.leaves})"


def walk_from_roles(vertices: list[int], sources: int, kind: str) -> OrientedWalk:
    """Orient each edge out of whichever endpoint is a source."""
    d = len(vertices)
    k = d if kind == "cycle" else d - 1
    bits = tuple(bool(sources >> vertices[i] & 1) for i in range(k))
    return OrientedWalk(tuple(vertices), bits, kind)


def twin_classes(D: Digraph) -> list[list[int]]:
    """Classes of vertices any two of which can be swapped by an automorphism.

    ``u`` and ``v`` are twins when their neighbourhoods agree outside
    ``{u, v}`` and the arcs between them are symmetric.  This relation is an
    equivalence; only classes with at least two members are returned.
    """
    groups: dict[tuple[int, int], list[int]] = {}
    classes: list[list[int]] = []
    # twins either share neighbourhoods exactly (non-adjacent) or up to
    # themselves (a digon between them); key both ways and merge
    seen = [False] * D.order
    for v in range(D.order):
        groups.setdefault((D.out_bits[v], D.in_bits[v]), []).append(v)
    for v in range(D.order):
        if seen[v]:
            continue
        b = 1 << v
        cls = [v]
        seen[v] = True
        for w in groups.get((D.out_bits[v], D.in_bits[v]), []):
            if not seen[w] and w != v:
                cls.append(w)
                seen[w] = True
        if len(cls) == 1:
            # closed neighbourhoods: v and w adjacent both ways
            key_o, key_i = D.out_bits[v] | b, D.in_bits[v] | b
            for w in range(v + 1, D.order):
                wb = 1 << w
                if (not seen[w] and D.out_bits[w] | wb == key_o
                        and D.in_bits[w] | wb == key_i
                        and D.has_arc(v, w) and D.has_arc(w, v)):
                    cls.append(w)
                    seen[w] = True
        if len(cls) > 1:
            classes.append(sorted(cls))
    return classes


def _role_search(D: Digraph, cfg: SolverConfig, budget: Budget, need: int,
                 cap: int, leaf: Callable[[int, int], object], stats: SolveStats | None):
    """Branch on source/sink roles; ``leaf(S, T)`` returns a result or None.

    ``need`` is the minimum number of usable arcs per vertex in its role and
    ``cap`` the maximum size of each role class.

    Vertices whose transposition is an automorphism of ``D`` (twins) are
    interchangeable, so within each twin class the sources are required to
    precede the sinks in index order.
    """
    out, inn = D.out_bits, D.in_bits
    dynamic = cfg.branch_rule == "min_domain"
    # per twin class: (class mask, mask of members above v, mask below v)
    twins = []
    for cls in twin_classes(D):
        cm = sum(1 << v for v in cls)
        above = {v: sum(1 << w for w in cls if w > v) for v in cls}
        below = {v: sum(1 << w for w in cls if w < v) for v in cls}
        twins.append((cm, above, below))

    def order_twins(S: int, T: int) -> tuple[int, int]:
        for cm, above, below in twins:
            t = T & cm
            if t:
                T |= above[(t & -t).bit_length() - 1]
            s_ = S & cm
            if s_:
                S |= below[s_.bit_length() - 1]
        return S, T

    def propagate(S: int, T: int, R: int):
        while True:
            if twins:
                S, T = order_twins(S, T)
                if S & T:
                    return None
                R &= ~(S | T)
            if S.bit_count() > cap or T.bit_count() > cap:
                return None
            if R and S.bit_count() == cap:
                T |= R
                R = 0
            elif R and T.bit_count() == cap:
                S |= R
                R = 0
            changed = False
            TR, SR = T | R, S | R
            for v in iter_bits(R):
                can_s = (out[v] & TR).bit_count() >= need
                can_t = (inn[v] & SR).bit_count() >= need
                if not (can_s or can_t):
                    return None
                if not can_s:
                    T |= 1 << v
                    R &= ~(1 << v)
                    changed = True
                elif not can_t:
                    S |= 1 << v
                    R &= ~(1 << v)
                    changed = True
                if changed:
                    break
            if changed:
                continue
            for s in iter_bits(S):
                if (out[s] & TR).bit_count() < need:
                    return None
            for t in iter_bits(T):
                if (inn[t] & SR).bit_count() < need:
                    return None
            return S, T, R

    def pick(S: int, T: int, R: int) -> tuple[int, bool]:
        TR, SR = T | R, S | R
        best, key, src_first = -1, None, True
        for v in iter_bits(R):
            o = (out[v] & TR).bit_count()
            i = (inn[v] & SR).bit_count()
            k = (min(o, i), v) if dynamic else (v,)
            if key is None or k < key:
                best, key, src_first = v, k, o >= i
            if not dynamic:
                break
        return best, src_first

    def rec(S: int, T: int, R: int):
        budget.tick()
        st = propagate(S, T, R)
        if st is None:
            return None
        S, T, R = st
        if R == 0:
            if stats is not None:
                stats.leaves += 1
            return leaf(S, T)
        v, src_first = pick(S, T, R)
        b = 1 << v
        order = ((S | b, T), (S, T | b)) if src_first else ((S, T | b), (S | b, T))
        for S2, T2 in order:
            res = rec(S2, T2, R & ~b)
            if res is not None:
                return res
        return None

    try:
        return rec(0, 0, D.all_mask)
    finally:
        if stats is not None:
            stats.nodes = budget.nodes


def _bip_adj(D: Digraph, S: int, T: int) -> list[int]:
    adj = [0] * D.order
    for s in iter_bits(S):
        adj[s] = D.out_bits[s] & T
    for t in iter_bits(T):
        adj[t] = D.in_bits[t] & S
    return adj


def solve_adhc(D: Digraph, cfg: SolverConfig | None = None, *,
               stats: SolveStats | None = None) -> OrientedWalk | None:
    """Anti-directed Hamiltonian cycle of ``D`` or None if none exists.

    Raises :class:`BudgetExceeded` when ``cfg.node_limit`` search nodes do not
    suffice; that outcome is never reported as None.
    """
    cyc = _solve_cover(D, 1, cfg, stats)
    if cyc is None:
        return None
    return cyc.cycles[0]


def solve_anti_two_factor(D: Digraph, max_cycles: int | None = None,
                          cfg: SolverConfig | None = None, *,
                          stats: SolveStats | None = None) -> TwoFactorCert | None:
    """Anti-directed 2-factor with at most ``max_cycles`` cycles (None = any)."""
    return _solve_cover(D, max_cycles, cfg, stats)


def _solve_cover(D: Digraph, max_cycles: int | None, cfg: SolverConfig | None,
                 stats: SolveStats | None) -> TwoFactorCert | None:
    cfg = cfg or SolverConfig()
    N = D.order
    if N < 4 or N % 2:
        return None
    limit = N // 4 if max_cycles is None else min(max_cycles, N // 4)
    if limit < 1:
        return None
    budget = Budget(cfg.node_limit)

    def leaf(S: int, T: int):
        adj = _bip_adj(D, S, T)
        cycles = cover_cycles(adj, D.all_mask, limit, budget, left=S)
        if cycles is None:
            return None
        return TwoFactorCert(tuple(walk_from_roles(c, S, "cycle") for c in cycles))

    cert = _role_search(D, cfg, budget, 2, N // 2, leaf, stats)
    if cert is not None:
        v = verify_two_factor(D, cert)
        if not v:
            raise AssertionError(f"internal error: invalid 2-factor ({v.reason})")
    return cert


def solve_adhp(D: Digraph, cfg: SolverConfig | None = None, *,
               stats: SolveStats | None = None) -> OrientedWalk | None:
    """Anti-directed Hamiltonian path of ``D`` or None if none exists."""
    cfg = cfg or SolverConfig()
    N = D.order
    if N <= 1:
        return OrientedWalk(tuple(range(N)), (), "path")
    budget = Budget(cfg.node_limit)

    def leaf(S: int, T: int):
        adj = _bip_adj(D, S, T) + [0, 0]
        ns, nt = S.bit_count(), T.bit_count()
        verts = D.all_mask
        if ns == nt:
            wt, ws = N, N + 1
            adj[wt] = S | (1 << ws)
            adj[ws] = T | (1 << wt)
            for s in iter_bits(S):
                adj[s] |= 1 << wt
            for t in iter_bits(T):
                adj[t] |= 1 << ws
            dummies = (wt, ws)
            left = S | (1 << ws)
            forced = (wt, ws)
        else:
            big, small = (S, T) if ns > nt else (T, S)
            w = N
            adj[w] = big
            for v in iter_bits(big):
                adj[v] |= 1 << w
            dummies = (w,)
            left = big
            forced = None
        allv = verts
        for w in dummies:
            allv |= 1 << w
        cyc = cover_cycles(adj, allv, 1, budget, min_len=3, left=left, forced_first=forced)
        if cyc is None:
            return None
        c = cyc[0]
        i = c.index(dummies[0])
        c = c[i:] + c[:i]
        core = [v for v in c if v not in dummies]
        return walk_from_roles(core, S, "path")

    w = _role_search(D, cfg, budget, 1, (N + 1) // 2, leaf, stats)
    if w is not None and not verify_walk(D, w, anti_directed=True, spanning=True):
        raise AssertionError("internal error: invalid ADHP")
    return w


def solve_directed_hc(D: Digraph, cfg: SolverConfig | None = None, *,
                      stats: SolveStats | None = None) -> OrientedWalk | None:
    """Directed Hamiltonian cycle (all orientation bits True) or None.

    Cycles have at least three vertices, so a digon does not count.
    """
    cfg = cfg or SolverConfig()
    N = D.order
    if N < 3:
        return None
    out, inn = D.out_bits, D.in_bits
    if any(b == 0 for b in out) or any(b == 0 for b in inn):
        return None
    budget = Budget(cfg.node_limit)
    start = 0
    sbit = 1
    path = [start]

    def reach_ok(head: int, rem: int) -> bool:
        seen = 1 << head
        frontier = seen
        allowed = rem | sbit
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= out[v]
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt & ~sbit
        return (seen & allowed) == allowed

    def rec(head: int, rem: int) -> bool:
        budget.tick()
        if rem == 0:
            return bool(out[head] & sbit)
        forced = -1
        hb = 1 << head
        for r in iter_bits(rem):
            if not inn[r] & (rem | hb):
                return False
            if not out[r] & (rem | sbit):
                return False
            if inn[r] & (rem | hb) == hb:
                if forced >= 0:
                    return False
                forced = r
        if not reach_ok(head, rem):
            return False
        if forced >= 0:
            cands = [forced] if out[head] >> forced & 1 else []
        else:
            cands = sorted(iter_bits(out[head] & rem), key=lambda v: (out[v] & rem).bit_count())
        for v in cands:
            path.append(v)
            if rec(v, rem & ~(1 << v)):
                return True
            path.pop()
        return False

    try:
        from ._search import _deep_recursion
        with _deep_recursion(N):
            found = rec(start, D.all_mask & ~sbit)
    finally:
        if stats is not None:
            stats.nodes = budget.nodes
    if not found:
        return None
    w = OrientedWalk.directed(path, "cycle")
    if not verify_walk(D, w, directed=True, spanning=True):
        raise AssertionError("internal error: invalid directed Hamiltonian cycle")
    return w


def longest_proper_adp(D: Digraph, cfg: SolverConfig | None = None, *,
                       stats: SolveStats | None = None) -> OrientedWalk:
    """A maximum-length proper anti-directed path (empty when ``D`` has no arcs)."""
    cfg = cfg or SolverConfig()
    N = D.order
    out, inn = D.out_bits, D.in_bits
    budget = Budget(cfg.node_limit)
    best: list[int] = []
    ceiling = N - (N % 2)
    path: list[int] = []

    class _Done(Exception):
        pass

    def rec(head: int, rem: int, forward: bool) -> None:
        nonlocal best
        budget.tick()
        L = len(path)
        if L % 2 == 0 and L > len(best):
            best = list(path)
            if L >= ceiling:
                raise _Done
        if L + rem.bit_count() <= len(best):
            return
        nb = (out[head] if forward else inn[head]) & rem
        for v in iter_bits(nb):
            path.append(v)
            rec(v, rem & ~(1 << v), not forward)
            path.pop()

    from ._search import _deep_recursion
    try:
        with _deep_recursion(N):
            for v in range(N):
                if not out[v]:
                    continue
                path.append(v)
                rec(v, D.all_mask & ~(1 << v), True)
                path.pop()
    except _Done:
        pass
    finally:
        if stats is not None:
            stats.nodes = budget.nodes
    return OrientedWalk.alternating(best, "path") if best else OrientedWalk((), (), "path")
