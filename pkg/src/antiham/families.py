"""Generators for the extremal family F(n, k), the two exceptional digraphs,
ladders, oriented cycles and random digraphs, plus a recogniser for the
exceptional digraphs.

Canonical labelling of F(n, k): ``Y1, X1, Y2, X2`` occupy consecutive index
blocks, i.e. ``Y1 = [0, k)``, ``X1 = [k, n/2)``, ``Y2 = [n/2, n/2 + k)``,
``X2 = [n/2 + k, n)``.  In F2 the distinguished vertex ``x`` is the lowest
index of ``X1``.  Ladders put ``u_i`` at ``i - 1`` and ``v_j`` at ``n + j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .digraph import BipartiteGraph, Digraph, iter_bits, members

__all__ = [
    "f_partition",
    "gen_F",
    "gen_F1",
    "gen_F2",
    "gen_ladder",
    "gen_oriented_cycle",
    "gen_anti_directed_cycle",
    "gen_complete",
    "gen_random_digraph",
    "gen_random_min_semidegree",
    "gen_two_factor_pattern",
    "Recognition",
    "recognize_exception",
]


def _check_nk(n: int, k: int) -> None:
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and at least 2, got {n}")
    if not 0 <= k <= n // 2:
        raise ValueError(f"k must satisfy 0 <= k <= n/2, got k={k}, n={n}")


def f_partition(n: int, k: int) -> dict[str, list[int]]:
    _check_nk(n, k)
    h = n // 2
    return {
        "Y1": list(range(0, k)),
        "X1": list(range(k, h)),
        "Y2": list(range(h, h + k)),
        "X2": list(range(h + k, n)),
    }


def gen_F(n: int, k: int) -> Digraph:
    """F(n, k): arcs Y_i -> Y_i u X_i and X_i -> Y_{3-i} u X_{3-i}."""
    p = f_partition(n, k)
    mask = {name: sum(1 << v for v in vs) for name, vs in p.items()}
    out = [0] * n
    for i, j in ((1, 2), (2, 1)):
        y_targets = mask[f"Y{i}"] | mask[f"X{i}"]
        x_targets = mask[f"Y{j}"] | mask[f"X{j}"]
        for v in p[f"Y{i}"]:
            out[v] = y_targets & ~(1 << v)
        for v in p[f"X{i}"]:
            out[v] = x_targets
    return Digraph.from_out_bits(out)


def _check_exceptional(n: int) -> None:
    if n < 4 or n % 2:
        raise ValueError(f"n must be even and at least 4, got {n}")


def gen_F1(n: int) -> Digraph:
    _check_exceptional(n)
    y1, y2 = 0, n // 2
    return gen_F(n, 1).with_arcs([(y1, y2), (y2, y1)])


def gen_F2(n: int) -> Digraph:
    _check_exceptional(n)
    y1, x, y2 = 0, 1, n // 2
    return gen_F(n, 1).with_arcs([(y1, y2), (y2, x), (x, y1)])


def gen_complete(n: int) -> Digraph:
    return Digraph.complete(n)


def gen_ladder(n: int, directed: bool = False) -> Digraph | BipartiteGraph:
    """Ladder L_n (``u_i ~ v_j`` iff ``|i - j| <= 1``); directed version orients u -> v."""
    if n < 1:
        raise ValueError("ladder needs n >= 1")
    edges = [(i, n + j) for i in range(n) for j in range(max(0, i - 1), min(n, i + 2))]
    if directed:
        return Digraph(2 * n, edges)
    return BipartiteGraph.from_edges(range(n), range(n, 2 * n), edges, universe=2 * n)


def _pattern_bits(pattern) -> list[bool]:
    if isinstance(pattern, str):
        table = {"+": True, "1": True, "-": False, "0": False}
        try:
            return [table[ch] for ch in pattern.strip()]
        except KeyError:
            raise ValueError(f"pattern must use +/- or 1/0, got {pattern!r}") from None
    return [bool(b) for b in pattern]


def gen_oriented_cycle(pattern) -> Digraph:
    """Cycle ``0 1 ... L-1`` where bit ``i`` orients the edge ``{i, i+1 mod L}``.

    A pattern that alternates along its length but has odd length cannot close
    into an anti-directed cycle and is rejected.
    """
    bits = _pattern_bits(pattern)
    L = len(bits)
    if L < 3:
        raise ValueError("cycle pattern needs at least 3 bits")
    if L % 2 and all(bits[i] != bits[i + 1] for i in range(L - 1)):
        raise ValueError("an alternating pattern must have even length")
    arcs = [(i, (i + 1) % L) if b else ((i + 1) % L, i) for i, b in enumerate(bits)]
    return Digraph(L, arcs)


def gen_anti_directed_cycle(length: int) -> Digraph:
    if length < 4 or length % 2:
        raise ValueError("an anti-directed cycle needs even length >= 4")
    return gen_oriented_cycle([i % 2 == 0 for i in range(length)])


def gen_two_factor_pattern(parts: Sequence[int]) -> Digraph:
    """Disjoint union of anti-directed cycles with the given (even) lengths."""
    arcs = []
    offset = 0
    for L in parts:
        cyc = gen_anti_directed_cycle(L)
        arcs.extend((u + offset, v + offset) for u, v in cyc.arcs())
        offset += L
    return Digraph(offset, arcs)


def gen_random_digraph(N: int, p: float, seed: int | None = None) -> Digraph:
    rng = np.random.default_rng(seed)
    mat = rng.random((N, N)) < p
    np.fill_diagonal(mat, False)
    return Digraph.from_matrix(mat)


def gen_random_min_semidegree(N: int, d: int, seed: int | None = None,
                              p: float | None = None) -> Digraph:
    """Random digraph with minimum semi-degree at least ``d``.

    Arcs are drawn independently with probability ``p`` (default ``d/(N-1)``),
    then every vertex short of ``d`` out-arcs receives arcs to its lowest
    in-degree non-neighbours, and likewise for in-arcs.  Ties are broken by a
    seeded random key, so the result is deterministic per seed.  The repair
    biases the sample towards near-regular digraphs.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if not 0 <= d <= N - 1:
        raise ValueError(f"infeasible semi-degree {d} for {N} vertices")
    rng = np.random.default_rng(seed)
    if p is None:
        p = d / (N - 1) if N > 1 else 0.0
    mat = rng.random((N, N)) < p
    np.fill_diagonal(mat, False)
    key = rng.random(N)

    for v in range(N):
        short = d - int(mat[v].sum())
        if short > 0:
            cand = np.flatnonzero(~mat[v])
            cand = cand[cand != v]
            indeg = mat.sum(axis=0)[cand]
            order = np.lexsort((key[cand], indeg))
            mat[v, cand[order[:short]]] = True
    for v in range(N):
        short = d - int(mat[:, v].sum())
        if short > 0:
            cand = np.flatnonzero(~mat[:, v])
            cand = cand[cand != v]
            outdeg = mat.sum(axis=1)[cand]
            order = np.lexsort((key[cand], outdeg))
            mat[cand[order[:short]], v] = True
    return Digraph.from_matrix(mat)


@dataclass(frozen=True)
class Recognition:
    """``kind`` is ``"none"``, ``"F1"`` or ``"F2"``; ``relabel[v]`` is the
    canonical generator label of vertex ``v`` when recognised."""

    kind: str
    relabel: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.kind != "none"


def _try_labelling(D: Digraph, y1: int, y2: int, x1: list[int], x2: list[int],
                   first_x: int | None, target: Digraph) -> tuple[int, ...] | None:
    n = D.order
    h = n // 2
    if len(x1) != h - 1 or len(x2) != h - 1 or set(x1) & set(x2):
        return None
    if first_x is not None:
        x1 = [first_x] + [v for v in x1 if v != first_x]
    perm = [-1] * n
    perm[y1] = 0
    perm[y2] = h
    for i, v in enumerate(x1):
        perm[v] = 1 + i
    for i, v in enumerate(x2):
        perm[v] = h + 1 + i
    if -1 in perm or len(set(perm)) != n:
        return None
    if D.relabel(perm) == target:
        return tuple(perm)
    return None


def recognize_exception(D: Digraph) -> Recognition:
    """Decide whether ``D`` is isomorphic to F1 or F2 on its vertex count.

    Candidate positions for ``y1, y2`` (and ``x`` for F2) are located from the
    digon structure and degree signature; each candidate labelling is then
    checked arc-for-arc against the generator.
    """
    n = D.order
    if n < 4 or n % 2:
        return Recognition("none")
    h = n // 2
    base = 2 * (h * h - 1)
    m = D.num_arcs()
    if m not in (base + 2, base + 3):
        return Recognition("none")
    digon = [D.out_bits[v] & D.in_bits[v] for v in range(n)]

    if m == base + 2:
        if any(D.out_degree(v) != h or D.in_degree(v) != h for v in range(n)):
            return Recognition("none")
        target = gen_F1(n)
        for p in range(n):
            if digon[p].bit_count() != 1:
                continue
            q = digon[p].bit_length() - 1
            if digon[q] != 1 << p:
                continue
            x1 = members(D.out_bits[p] & ~(1 << q))
            x2 = members(D.in_bits[p] & ~(1 << q))
            perm = _try_labelling(D, p, q, x1, x2, None, target)
            if perm is not None:
                return Recognition("F1", perm)
        return Recognition("none")

    target = gen_F2(n)
    xcands = [v for v in range(n) if D.out_degree(v) == h + 1 and D.in_degree(v) == h + 1]
    for x in xcands:
        ycands = [v for v in iter_bits(digon[x]) if digon[v].bit_count() == 1]
        for p in ycands:
            for q in ycands:
                if p == q or not D.has_arc(p, q) or D.has_arc(q, p):
                    continue
                x1 = members(D.out_bits[p] & ~(1 << q))
                x2 = members(D.in_bits[p] & ~(1 << x))
                perm = _try_labelling(D, p, q, x1, x2, x, target)
                if perm is not None:
                    return Recognition("F2", perm)
    return Recognition("none")
