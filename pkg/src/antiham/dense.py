"""Dense-pair machinery: max-cut cleaning, long proper anti-directed paths
between dense vertex sets, and greedy 2-in-star packings."""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, OrientedWalk, arc_count, as_mask, iter_bits
from .verify import verify_walk

__all__ = [
    "maxcut_partition",
    "proper_adp_from_dense_pair",
    "StarPacking",
    "two_in_star_packing",
    "star_bound",
]


def _check_dense(D: Digraph, xm: int, ym: int, c: float) -> None:
    if not 0 < c <= 1:
        raise ValueError(f"density c must lie in (0, 1], got {c}")
    if not xm or not ym:
        raise ValueError("X and Y must be nonempty")
    e = arc_count(D, xm, ym)
    if e == 0 or e < c * xm.bit_count() * ym.bit_count():
        raise ValueError(f"precondition violated: e(X,Y)={e} < c|X||Y|="
                         f"{c * xm.bit_count() * ym.bit_count():g}")


def maxcut_partition(D: Digraph, X, Y, c: float) -> tuple[list[int], list[int]]:
    """Disjoint ``X' <= X`` and ``Y' <= Y`` with every ``x in X'`` sending at
    least ``c|Y|/8`` arcs into ``Y'`` and every ``y in Y'`` receiving at least
    ``c|X|/8`` arcs from ``X'``.

    The overlap ``X & Y`` is split by single-vertex moves (ascending index,
    repeated until a full pass improves nothing), then deficient vertices are
    deleted one at a time.  Raises ValueError if ``e(X, Y) < c|X||Y|``.
    """
    xm, ym = as_mask(X), as_mask(Y)
    _check_dense(D, xm, ym, c)
    out, inn = D.out_bits, D.in_bits
    both = xm & ym
    x0 = (xm & ~ym) | both
    y0 = ym & ~xm
    improved = True
    while improved:
        improved = False
        for v in iter_bits(both):
            b = 1 << v
            if x0 & b:
                gain = (inn[v] & x0 & ~b).bit_count() - (out[v] & y0).bit_count()
                if gain > 0:
                    x0 &= ~b
                    y0 |= b
                    improved = True
            else:
                gain = (out[v] & y0 & ~b).bit_count() - (inn[v] & x0).bit_count()
                if gain > 0:
                    y0 &= ~b
                    x0 |= b
                    improved = True

    need_out = c * ym.bit_count() / 8
    need_in = c * xm.bit_count() / 8
    changed = True
    while changed:
        changed = False
        for v in iter_bits(x0 | y0):
            b = 1 << v
            if x0 & b and (out[v] & y0).bit_count() < need_out:
                x0 &= ~b
                changed = True
            elif y0 & b and (inn[v] & x0).bit_count() < need_in:
                y0 &= ~b
                changed = True
    if not x0 or not y0:
        raise AssertionError("internal error: cleaning removed every vertex")
    return list(iter_bits(x0)), list(iter_bits(y0))


def proper_adp_from_dense_pair(D: Digraph, X, Y, c: float) -> OrientedWalk:
    """Proper anti-directed path inside ``X | Y`` on at least
    ``(c/4) min(|X|, |Y|)`` vertices.

    Cleans the pair with :func:`maxcut_partition`, then grows a path in the
    bipartite graph of ``X' -> Y'`` arcs from an ``X'`` vertex until its end
    has no unused neighbour; such a path has at least twice the minimum degree
    many vertices.  It is cut to end in ``Y'``.
    """
    xm, ym = as_mask(X), as_mask(Y)
    xs, ys = maxcut_partition(D, xm, ym, c)
    xp, yp = as_mask(xs), as_mask(ys)
    out, inn = D.out_bits, D.in_bits
    path = [xs[0]]
    used = 1 << xs[0]
    while True:
        h = path[-1]
        nb = (out[h] & yp if xp >> h & 1 else inn[h] & xp) & ~used
        if not nb:
            break
        v = (nb & -nb).bit_length() - 1
        path.append(v)
        used |= 1 << v
    if len(path) % 2:
        path.pop()
    w = OrientedWalk.alternating(path, "path")
    if not verify_walk(D, w, anti_directed=True, proper=True):
        raise AssertionError("internal error: dense-pair path is not a proper ADP")
    return w


@dataclass(frozen=True)
class StarPacking:
    """Disjoint 2-in-stars ``(center, leaf1, leaf2)`` plus two independent arcs."""

    stars: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], tuple[int, int]]
    bound: float

    @property
    def count(self) -> int:
        return len(self.stars)

    def vertices(self) -> list[int]:
        vs = [v for s in self.stars for v in s]
        vs += [v for e in self.edges for v in e]
        return vs


def star_bound(d: int, big_d: int, n: int) -> float:
    """``((d-1)n - 4(d-1+D)) / (3(d+D-1))`` for ``d = delta+`` and ``D = Delta-``."""
    den = 3 * (d + big_d - 1)
    if den <= 0:
        return float("-inf")
    return ((d - 1) * n - 4 * (d - 1 + big_d)) / den


def _independent_arcs(D: Digraph):
    # lexicographically first pair of vertex-disjoint arcs
    out = D.out_bits
    for u in range(D.order):
        for v in iter_bits(out[u]):
            busy = (1 << u) | (1 << v)
            for w in range(u + 1, D.order):
                if busy >> w & 1:
                    continue
                free = out[w] & ~busy
                if free:
                    return (u, v), (w, (free & -free).bit_length() - 1)
    return None


def two_in_star_packing(D: Digraph) -> StarPacking:
    """Greedy maximal packing of 2-in-stars after fixing two independent arcs.

    On return no vertex outside the packing has two in-neighbours outside it,
    which is the maximality the counting bound needs.  Raises ValueError when
    ``delta+(D) < 1`` or no two independent arcs exist.
    """
    N = D.order
    out, inn = D.out_bits, D.in_bits
    if N == 0 or min(b.bit_count() for b in out) < 1:
        raise ValueError("two_in_star_packing needs minimum out-degree at least 1")
    edges = _independent_arcs(D)
    if edges is None:
        raise ValueError("no two independent arcs exist")
    used = 0
    for e in edges:
        used |= (1 << e[0]) | (1 << e[1])
    stars = []
    rest = D.all_mask & ~used
    changed = True
    while changed:
        changed = False
        for v in iter_bits(rest):
            if not rest >> v & 1:
                continue
            src = inn[v] & rest
            if src.bit_count() >= 2:
                l1 = (src & -src).bit_length() - 1
                src &= src - 1
                l2 = (src & -src).bit_length() - 1
                stars.append((v, l1, l2))
                rest &= ~((1 << v) | (1 << l1) | (1 << l2))
                changed = True
    d = min(b.bit_count() for b in out)
    big_d = max(b.bit_count() for b in inn)
    return StarPacking(tuple(stars), (edges[0], edges[1]), star_bound(d, big_d, N))
