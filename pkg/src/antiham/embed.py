"""Spanning subdigraph embedding (injective arc-preserving maps)."""

from __future__ import annotations

from ._search import Budget, SolverConfig, _deep_recursion
from .digraph import Digraph, iter_bits

__all__ = ["embed_spanning"]


def _degree_dominated(pattern: Digraph, host: Digraph) -> bool:
    pd = sorted((pattern.out_degree(v) + pattern.in_degree(v) for v in range(pattern.order)), reverse=True)
    hd = sorted((host.out_degree(v) + host.in_degree(v) for v in range(host.order)), reverse=True)
    return all(p <= h for p, h in zip(pd, hd))


def embed_spanning(host: Digraph, pattern: Digraph, cfg: SolverConfig | None = None) -> list[int] | None:
    """Find ``f`` with ``f[p]`` a host vertex, injective, mapping every pattern
    arc ``(p, q)`` onto a host arc ``(f[p], f[q])``.

    Raises ValueError when the orders differ and BudgetExceeded when the node
    budget runs out.
    """
    cfg = cfg or SolverConfig()
    n = pattern.order
    if host.order != n:
        raise ValueError("spanning embedding needs |host| == |pattern|")
    if n == 0:
        return []
    if pattern.num_arcs() > host.num_arcs() or not _degree_dominated(pattern, host):
        return None

    hout = [host.out_degree(v) for v in range(n)]
    hin = [host.in_degree(v) for v in range(n)]
    compat = []
    for p in range(n):
        po, pi = pattern.out_degree(p), pattern.in_degree(p)
        m = 0
        for h in range(n):
            if hout[h] >= po and hin[h] >= pi:
                m |= 1 << h
        if not m:
            return None
        compat.append(m)

    # order pattern vertices: connected growth, most constrained first
    und = [pattern.out_bits[p] | pattern.in_bits[p] for p in range(n)]
    order: list[int] = []
    placed = 0
    while len(order) < n:
        frontier = 0
        for p in order:
            frontier |= und[p]
        frontier &= ~placed
        pool = list(iter_bits(frontier)) or [p for p in range(n) if not placed >> p & 1]
        p = max(pool, key=lambda q: ((und[q] & placed).bit_count(), und[q].bit_count(), -q))
        order.append(p)
        placed |= 1 << p

    f = [-1] * n
    budget = Budget(cfg.node_limit)

    def rec(i: int, used: int) -> bool:
        budget.tick()
        if i == n:
            return True
        p = order[i]
        cand = compat[p] & ~used
        for q in iter_bits(pattern.out_bits[p]):
            if f[q] >= 0:
                cand &= host.in_bits[f[q]]
        for q in iter_bits(pattern.in_bits[p]):
            if f[q] >= 0:
                cand &= host.out_bits[f[q]]
        for h in iter_bits(cand):
            f[p] = h
            if rec(i + 1, used | (1 << h)):
                return True
            f[p] = -1
        return False

    with _deep_recursion(n):
        return list(f) if rec(0, 0) else None
