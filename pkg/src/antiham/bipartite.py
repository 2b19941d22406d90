"""Hamiltonian cycles and paths with prescribed ends in bipartite graphs.

Rotation-extension restarts run first; an exhaustive cycle-cover search is the
fallback, so a None answer from the public functions means "no such cycle/path"
whenever the budget was not exceeded.
"""

from __future__ import annotations

import numpy as np

from ._search import Budget, SolverConfig, cover_cycles, posa_path
from .digraph import BipartiteGraph, iter_bits

__all__ = ["bip_ham_cycle", "bip_ham_path", "moon_moser_condition"]


def _sizes(G: BipartiteGraph) -> tuple[int, int]:
    return G.left.bit_count(), G.right.bit_count()


def moon_moser_condition(G: BipartiteGraph) -> bool:
    """Balanced, and for each ``1 <= k <= n/4`` fewer than ``k`` vertices have degree ``<= k``."""
    nl, nr = _sizes(G)
    if nl != nr:
        return False
    n = nl + nr
    degs = sorted(G.degree(v) for v in iter_bits(G.vertices))
    for k in range(1, n // 4 + 1):
        if sum(1 for d in degs if d <= k) >= k:
            return False
    return True


def _rotate_to(cycle: list[int], v: int) -> list[int]:
    i = cycle.index(v)
    return cycle[i:] + cycle[:i]


def bip_ham_cycle(G: BipartiteGraph, cfg: SolverConfig | None = None, *,
                  seed: int | None = 0, exact: bool = True,
                  max_rotations: int | None = None) -> list[int] | None:
    """Hamiltonian cycle of ``G`` as a vertex list starting on the left side.

    With ``exact=False`` only the heuristic runs and None is inconclusive.
    """
    cfg = cfg or SolverConfig()
    nl, nr = _sizes(G)
    verts = G.vertices
    if nl != nr or nl < 2:
        return None
    adj = G.adj
    degs = [(adj[v] & verts).bit_count() for v in iter_bits(verts)]
    if min(degs) < 2:
        return None
    n = nl + nr
    rng = np.random.default_rng(seed)
    rot = max_rotations if max_rotations is not None else 4 * n
    lefts = list(iter_bits(G.left))
    for attempt in range(cfg.restarts):
        start = lefts[0] if attempt == 0 else lefts[int(rng.integers(len(lefts)))]
        path = posa_path(adj, verts, start, None, rng, rot)
        if path is not None:
            return path
    if not exact:
        return None
    cyc = cover_cycles(adj, verts, 1, Budget(cfg.node_limit), left=G.left)
    if cyc is None:
        return None
    c = cyc[0]
    start = min(v for v in c if G.left >> v & 1)
    return _rotate_to(c, start)


def _check_ends(G: BipartiteGraph, a: int, b: int) -> tuple[int, int]:
    """Return ``(big, small)`` side masks after validating end placement."""
    nl, nr = _sizes(G)
    verts = G.vertices
    if a == b or not (verts >> a & 1 and verts >> b & 1):
        raise ValueError("ends must be two distinct vertices of G")
    if nl >= nr:
        big, small = G.left, G.right
    else:
        big, small = G.right, G.left
    diff = abs(nl - nr)
    if diff > 1:
        raise ValueError(f"side sizes {nl},{nr} differ by more than one")
    if diff == 0:
        if bool(big >> a & 1) == bool(big >> b & 1):
            raise ValueError("balanced graph: ends must lie on opposite sides")
    elif not (big >> a & 1 and big >> b & 1):
        raise ValueError("unbalanced graph: both ends must lie on the larger side")
    return big, small


def bip_ham_path(G: BipartiteGraph, a: int, b: int, cfg: SolverConfig | None = None, *,
                 seed: int | None = 0, exact: bool = True,
                 max_rotations: int | None = None) -> list[int] | None:
    """Hamiltonian path of ``G`` from ``a`` to ``b``.

    Balanced sides need ``a``, ``b`` on opposite sides; if one side is larger by
    one, both ends must lie on it.  Violations raise ValueError.
    """
    cfg = cfg or SolverConfig()
    big, small = _check_ends(G, a, b)
    verts = G.vertices
    adj = G.adj
    n = verts.bit_count()
    if n == 2:
        return [a, b] if adj[a] >> b & 1 else None
    for v in iter_bits(verts):
        need = 1 if v in (a, b) else 2
        if (adj[v] & verts).bit_count() < need:
            return None
    rng = np.random.default_rng(seed)
    rot = max_rotations if max_rotations is not None else 4 * n
    for attempt in range(cfg.restarts):
        s, t = (a, b) if attempt % 2 == 0 else (b, a)
        path = posa_path(adj, verts, s, t, rng, rot)
        if path is not None:
            return path if s == a else path[::-1]
    if not exact:
        return None

    # exact: close the path into a cycle through dummy vertices
    universe = len(adj)
    ext = list(adj)
    if big.bit_count() != small.bit_count():
        w = universe
        ext.append((1 << a) | (1 << b))
        ext[a] |= 1 << w
        ext[b] |= 1 << w
        left = big
        dummies = [w]
        forced = None
    else:
        # a - w1 - w2 - b, with w1 on b's side and w2 on a's side
        w1, w2 = universe, universe + 1
        ext.append((1 << a) | (1 << w2))
        ext.append((1 << w1) | (1 << b))
        ext[a] |= 1 << w1
        ext[b] |= 1 << w2
        a_side = G.left if G.left >> a & 1 else G.right
        left = a_side | (1 << w2)
        dummies = [w1, w2]
        forced = (w1, w2)
    allv = verts
    for w in dummies:
        allv |= 1 << w
    cyc = cover_cycles(ext, allv, 1, Budget(cfg.node_limit), left=left, forced_first=forced)
    if cyc is None:
        return None
    c = cyc[0]
    # drop dummies, orient from a to b
    i = c.index(dummies[0])
    c = c[i:] + c[:i]
    core = [v for v in c if v not in dummies]
    if core[0] != a:
        core = core[::-1]
    if core[0] != a or core[-1] != b:
        raise AssertionError("internal error: dummy gadget did not force the ends")
    return core
