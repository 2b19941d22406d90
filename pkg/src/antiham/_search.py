"""Shared search machinery: node budgets, an exact cycle-cover DFS and a
rotation-extension path heuristic, all over bitset adjacency lists."""

from __future__ import annotations

import sys
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .digraph import iter_bits

__all__ = ["SolverConfig", "BudgetExceeded", "Budget", "cover_cycles", "posa_path"]


class BudgetExceeded(RuntimeError):
    """Search-node budget ran out before the search was conclusive."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exceeded after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SolverConfig:
    node_limit: int = 20_000_000
    exact_cutoff: int = 24
    branch_rule: str = "min_domain"
    restarts: int = 20

    def __post_init__(self):
        if self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.branch_rule not in ("min_domain", "index"):
            raise ValueError(f"unknown branch rule {self.branch_rule!r}")


class Budget:
    __slots__ = ("limit", "nodes")

    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(self.nodes)


@contextmanager
def _deep_recursion(depth: int):
    old = sys.getrecursionlimit()
    need = depth * 2 + 200
    if need > old:
        sys.setrecursionlimit(need)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def _component(adj, seed_mask: int, allowed: int) -> int:
    comp = seed_mask & allowed
    frontier = comp
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def _cut_structure(adj, verts: int) -> tuple[list[tuple[int, int]], int]:
    """Bridges and articulation points of the graph induced on ``verts``.

    Iterative lowlink DFS; returns ``(bridges, cut_vertex_mask)``.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: list[tuple[int, int]] = []
    cuts = 0
    t = 0
    for root in iter_bits(verts):
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter_bits(adj[root] & verts))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                    continue
                disc[w] = low[w] = t
                t += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter_bits(adj[w] & verts)))
                advanced = True
                break
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] > disc[parent]:
                    bridges.append((parent, v))
                if parent != root and low[v] >= disc[parent]:
                    cuts |= 1 << parent
        if root_children > 1:
            cuts |= 1 << root
    return bridges, cuts


def cover_cycles(adj, verts: int, max_cycles: int, budget: Budget, *,
                 min_len: int = 4, left: int | None = None,
                 forced_first: tuple[int, int] | None = None) -> list[list[int]] | None:
    """Exact search for vertex-disjoint cycles covering ``verts``.

    ``adj`` is a symmetric bitset adjacency list.  Each cycle has at least
    ``min_len`` vertices and at most ``max_cycles`` cycles are used.  When
    ``left`` is given, components that must be closed off separately are
    required to be balanced between ``left`` and the rest.  ``forced_first``
    fixes the first vertex and first edge of the first cycle.

    Returns the cycles as vertex lists, or None when no cover exists.
    Raises :class:`BudgetExceeded` when the budget runs out.
    """
    if verts == 0:
        return []
    if max_cycles < 1:
        return None
    for v in iter_bits(verts):
        if (adj[v] & verts).bit_count() < 2:
            return None
    # no cycle uses a bridge; a single spanning cycle also rules out cut vertices
    bridges, cuts = _cut_structure(adj, verts)
    if max_cycles == 1 and (cuts or bridges):
        return None
    if bridges:
        adj = list(adj)
        for u, v in bridges:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        for v in iter_bits(verts):
            if (adj[v] & verts).bit_count() < 2:
                return None

    cycles: list[list[int]] = []
    path: list[int] = []

    def free_components_ok(rem: int, open_comp: int, cycles_left: int) -> bool:
        rest = rem & ~open_comp
        count = 0
        while rest:
            low = rest & -rest
            comp = _component(adj, low, rest)
            size = comp.bit_count()
            if size < min_len:
                return False
            if left is not None and 2 * (comp & left).bit_count() != size:
                return False
            count += 1
            if count > cycles_left:
                return False
            rest &= ~comp
        return True

    def start_cycle(rem: int, cycles_left: int) -> bool:
        # cycles_left counts cycles still available including the one started here
        if rem == 0:
            return True
        if cycles_left == 0:
            return False
        budget.tick()
        best, best_deg = -1, 1 << 30
        for v in iter_bits(rem):
            dg = (adj[v] & rem).bit_count()
            if dg < 2:
                return False
            if dg < best_deg:
                best, best_deg = v, dg
        if not free_components_ok(rem, 0, cycles_left):
            return False
        start = best
        path.append(start)
        ok = extend(start, start, rem & ~(1 << start), cycles_left - 1)
        if not ok:
            path.pop()
        return ok

    def extend(start: int, head: int, rem: int, cycles_after: int) -> bool:
        budget.tick()
        sbit = 1 << start
        length = len(path) - sum(len(c) for c in cycles)
        can_close = length >= min_len and adj[head] & sbit
        if rem == 0:
            if can_close:
                cycles.append(path[-length:])
                return True
            return False
        attach = rem | (1 << head) | sbit
        hb = 1 << head
        forced = -1
        to_start = 0
        for r in iter_bits(rem):
            a = adj[r] & attach
            c = a.bit_count()
            if c < 2:
                return False
            if c == 2 and head != start:
                if a & hb:
                    if forced >= 0:
                        return False
                    forced = r
                if a & sbit:
                    to_start += 1
                    if to_start > 1:
                        return False
        open_comp = _component(adj, hb, rem | hb)
        if head != start and not adj[start] & open_comp:
            return False
        if not free_components_ok(rem, open_comp, cycles_after):
            return False

        if forced >= 0:
            if not adj[head] >> forced & 1:
                return False
            cands = [forced]
        elif head == start and forced_first is not None and not cycles:
            cands = [forced_first[1]] if adj[head] >> forced_first[1] & 1 and rem >> forced_first[1] & 1 else []
        else:
            nb = adj[head] & rem
            cands = sorted(iter_bits(nb), key=lambda v: (adj[v] & attach).bit_count())
        for v in cands:
            path.append(v)
            if extend(start, v, rem & ~(1 << v), cycles_after):
                return True
            path.pop()
        if can_close and cycles_after > 0 and forced < 0:
            cyc = path[-length:]
            cycles.append(cyc)
            if start_cycle(rem, cycles_after):
                return True
            cycles.pop()
        return False

    with _deep_recursion(verts.bit_count()):
        if forced_first is not None:
            s = forced_first[0]
            rem0 = verts & ~(1 << s)
            budget.tick()
            path.append(s)
            found = extend(s, s, rem0, max_cycles - 1)
        else:
            found = start_cycle(verts, max_cycles)
    return cycles if found else None


def _pick_bit(mask: int, rng: np.random.Generator | None, width: int) -> int:
    if rng is not None and width > 1:
        r = int(rng.integers(width))
        hi = mask >> r
        if hi:
            return ((hi & -hi).bit_length() - 1) + r
    return (mask & -mask).bit_length() - 1


def posa_path(adj, verts: int, start: int, goal: int | None,
              rng: np.random.Generator | None, max_rotations: int) -> list[int] | None:
    """Rotation-extension search with a fixed first vertex.

    With ``goal=None`` returns a Hamiltonian path of ``verts`` starting at
    ``start`` whose last vertex is adjacent to ``start`` (a Hamiltonian cycle);
    otherwise a Hamiltonian path from ``start`` to ``goal``.  Returns None on
    failure; never proves absence.
    """
    width = max(verts.bit_length(), 1)
    path = [start]
    pos = {start: 0}
    todo = verts & ~(1 << start)
    if goal is not None:
        todo &= ~(1 << goal)
        target = 1 << goal
    else:
        target = 1 << start
    onpath = 1 << start
    rotations = 0
    while True:
        h = path[-1]
        nb = adj[h] & todo
        if nb:
            v = _pick_bit(nb, rng, width)
            pos[v] = len(path)
            path.append(v)
            todo &= ~(1 << v)
            onpath |= 1 << v
            continue
        if todo == 0 and adj[h] & target and (goal is not None or len(path) >= 3):
            if goal is not None:
                path.append(goal)
            return path
        if rotations >= max_rotations or len(path) < 3:
            return None
        rotations += 1
        cand = adj[h] & onpath & ~(1 << path[-2])
        if not cand:
            return None
        want = todo if todo else target
        chosen = -1
        for p in iter_bits(cand):
            i = pos[p]
            if i + 1 < len(path) - 1 and adj[path[i + 1]] & want:
                chosen = i
                break
        if chosen < 0:
            p = _pick_bit(cand, rng, width)
            chosen = pos[p]
            if chosen + 1 >= len(path) - 1:
                continue
        seg = path[chosen + 1:]
        seg.reverse()
        path[chosen + 1:] = seg
        for j in range(chosen + 1, len(path)):
            pos[path[j]] = j
