"""Absorbers, connectors and the absorbing path.

An ``(x, y)``-absorber is a 4-tuple ``(a, b, c, d)`` such that ``abcd`` and
``axcbyd`` are both proper anti-directed paths; it needs the arcs
``ab, cb, cd, ax, cx, yb, yd``.  An ``(x, y)``-connector is a pair ``(a, b)``
with arcs ``ax, ab, yb`` so that ``x a b y`` is anti-directed.  Absorbers are
chained by connectors into a proper anti-directed path that can swallow any
small even set of outside vertices without moving its endpoints.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice
from typing import Iterator

import numpy as np
from scipy.optimize import linear_sum_assignment

from .digraph import Digraph, OrientedWalk, as_mask, iter_bits
from .params import Params
from .verify import verify_walk

__all__ = [
    "AbsorberTuple",
    "ConnectorPair",
    "iter_absorbers",
    "iter_connectors",
    "enumerate_absorbers",
    "enumerate_connectors",
    "count_absorbers",
    "count_connectors",
    "census",
    "FamilySelection",
    "select_disjoint_family",
    "SupplyExhausted",
    "AbsorbError",
    "build_absorbing_path",
    "absorb",
]


@dataclass(frozen=True)
class AbsorberTuple:
    a: int
    b: int
    c: int
    d: int
    target: tuple[int, int]

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def required_arcs(self) -> list[tuple[int, int]]:
        a, b, c, d = self.vertices
        x, y = self.target
        return [(a, b), (c, b), (c, d), (a, x), (c, x), (y, b), (y, d)]

    def is_valid(self, D: Digraph) -> bool:
        if len(set(self.vertices + self.target)) != 6:
            return False
        return all(D.has_arc(u, v) for u, v in self.required_arcs())


@dataclass(frozen=True)
class ConnectorPair:
    a: int
    b: int
    target: tuple[int, int]

    def required_arcs(self) -> list[tuple[int, int]]:
        x, y = self.target
        return [(self.a, x), (self.a, self.b), (y, self.b)]

    def is_valid(self, D: Digraph) -> bool:
        if len({self.a, self.b, *self.target}) != 4:
            return False
        return all(D.has_arc(u, v) for u, v in self.required_arcs())


def _check_pair(D: Digraph, x: int, y: int) -> None:
    if x == y:
        raise ValueError("absorber/connector targets must be distinct")
    if not (0 <= x < D.order and 0 <= y < D.order):
        raise ValueError("target vertex out of range")


def _absorber_quads(D: Digraph, x: int, y: int, avoid: int = 0) -> Iterator[tuple[int, int, int, int]]:
    # lexicographic in (a, b, c, d)
    out, inn = D.out_bits, D.in_bits
    xy = (1 << x) | (1 << y) | avoid
    for a in iter_bits(inn[x] & ~xy):
        ab = 1 << a
        for b in iter_bits(out[a] & out[y] & ~xy):
            bb = ab | (1 << b)
            for c in iter_bits(inn[x] & inn[b] & ~xy & ~bb):
                for d in iter_bits(out[c] & out[y] & ~xy & ~bb):
                    yield a, b, c, d


def iter_absorbers(D: Digraph, x: int, y: int) -> Iterator[AbsorberTuple]:
    _check_pair(D, x, y)
    for a, b, c, d in _absorber_quads(D, x, y):
        yield AbsorberTuple(a, b, c, d, (x, y))


def iter_connectors(D: Digraph, x: int, y: int) -> Iterator[ConnectorPair]:
    _check_pair(D, x, y)
    out, inn = D.out_bits, D.in_bits
    xy = (1 << x) | (1 << y)
    for a in iter_bits(inn[x] & ~xy):
        for b in iter_bits(out[a] & out[y] & ~xy):
            yield ConnectorPair(a, b, (x, y))


def enumerate_absorbers(D: Digraph, x: int, y: int, limit: int | None = None) -> list[AbsorberTuple]:
    """All ``(x, y)``-absorbers in lexicographic order, at most ``limit`` of them."""
    return list(islice(iter_absorbers(D, x, y), limit))


def enumerate_connectors(D: Digraph, x: int, y: int, limit: int | None = None) -> list[ConnectorPair]:
    """All ``(x, y)``-connectors in lexicographic order, at most ``limit`` of them."""
    return list(islice(iter_connectors(D, x, y), limit))


def count_absorbers(D: Digraph, x: int, y: int) -> int:
    _check_pair(D, x, y)
    out, inn = D.out_bits, D.in_bits
    xy = (1 << x) | (1 << y)
    total = 0
    for a in iter_bits(inn[x] & ~xy):
        ab = 1 << a
        for b in iter_bits(out[a] & out[y] & ~xy):
            bb = ab | (1 << b)
            dpool = out[y] & ~xy & ~bb
            for c in iter_bits(inn[x] & inn[b] & ~xy & ~bb):
                total += (out[c] & dpool).bit_count()
    return total


def count_connectors(D: Digraph, x: int, y: int) -> int:
    _check_pair(D, x, y)
    out, inn = D.out_bits, D.in_bits
    xy = (1 << x) | (1 << y)
    return sum((out[a] & out[y] & ~xy).bit_count() for a in iter_bits(inn[x] & ~xy))


def _census_rows(args) -> list[tuple[int, int, int]]:
    D, what, pairs = args
    fn = count_absorbers if what == "absorbers" else count_connectors
    return [(x, y, fn(D, x, y)) for x, y in pairs]


def census(D: Digraph, what: str = "absorbers", pairs: Sequence[tuple[int, int]] | None = None,
           jobs: int = 1) -> dict[tuple[int, int], int]:
    """Count absorbers or connectors for each ordered pair (default: all pairs).

    With ``jobs > 1`` the pairs are split into contiguous chunks counted in
    worker processes; the result is keyed and ordered by pair either way.
    """
    if what not in ("absorbers", "connectors"):
        raise ValueError(f"census target must be 'absorbers' or 'connectors', got {what!r}")
    if pairs is None:
        pairs = [(x, y) for x in range(D.order) for y in range(D.order) if x != y]
    pairs = [(int(x), int(y)) for x, y in pairs]
    for x, y in pairs:
        _check_pair(D, x, y)
    if jobs <= 1 or len(pairs) < 2:
        rows = _census_rows((D, what, pairs))
    else:
        chunks = [c.tolist() for c in np.array_split(np.array(pairs), min(jobs * 4, len(pairs)))]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_census_rows, [(D, what, [tuple(p) for p in ch]) for ch in chunks])
            rows = [r for part in parts for r in part]
    return {(x, y): n for x, y, n in rows}


@dataclass
class FamilySelection:
    """Outcome of :func:`select_disjoint_family`.

    ``hits[t]`` counts family members that are candidates for target ``t``;
    ``shortfalls`` lists the targets whose count fell below the requested floor.
    """

    family: list[tuple[int, ...]]
    hits: dict[Hashable, int]
    shortfalls: list[Hashable]
    probability: float
    floor: float
    dropped_overlaps: int = 0
    dropped_cap: int = 0


def select_disjoint_family(candidates: Mapping[Hashable, Sequence[Sequence[int]]], b: float,
                           c: float, seed: int | None = 0, n: int | None = None) -> FamilySelection:
    """Random family of tuples with pairwise disjoint images.

    Every distinct candidate tuple (length ``d``) is kept independently with
    probability ``q = min(1, (b/d) n / |U|)`` where ``U`` is the set of
    distinct candidates, so about ``(b/d) n`` tuples are drawn.  Tuples whose
    image meets an earlier kept tuple are dropped, then the family is capped at
    ``b n / d``.  Targets hit fewer than ``c n`` times are reported, not raised.
    ``n`` defaults to the number of distinct vertices in the candidates.
    """
    targets = list(candidates)
    universe: dict[tuple[int, ...], None] = {}
    for t in targets:
        for tup in candidates[t]:
            universe.setdefault(tuple(int(v) for v in tup), None)
    tuples = list(universe)
    if n is None:
        n = len({v for tup in tuples for v in tup})
    d = max((len(t) for t in tuples), default=1)
    if tuples:
        q = min(1.0, (b / d) * n / len(tuples))
    else:
        q = 0.0
    rng = np.random.default_rng(seed)
    draws = rng.random(len(tuples)) if tuples else np.empty(0)
    picked = [t for t, r in zip(tuples, draws) if r < q]
    used = 0
    family = []
    overlaps = 0
    for t in picked:
        m = as_mask(t)
        if m.bit_count() != len(t) or m & used:
            overlaps += 1
            continue
        used |= m
        family.append(t)
    cap = int(b * n / d + 1e-9)
    dropped_cap = max(0, len(family) - cap)
    family = family[:cap]
    chosen = set(family)
    hits = {t: sum(1 for tup in candidates[t] if tuple(tup) in chosen) for t in targets}
    floor = c * n
    shortfalls = [t for t in targets if hits[t] < floor]
    return FamilySelection(family, hits, shortfalls, q, floor, overlaps, dropped_cap)


class SupplyExhausted(RuntimeError):
    """No absorber or connector is left for some link of the absorbing path."""

    def __init__(self, message: str, link: int):
        super().__init__(message)
        self.link = link


class AbsorbError(ValueError):
    """The outside set cannot be absorbed; ``pair`` names the culprit if any."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


def _is_good(D: Digraph, quad: tuple[int, int, int, int], avoid: int) -> bool:
    # good = absorbs at least one pair of vertices outside the quad and avoid
    a, b, c, d = quad
    free = D.all_mask & ~as_mask(quad) & ~avoid
    xs = D.out_bits[a] & D.out_bits[c] & free
    ys = D.in_bits[b] & D.in_bits[d] & free
    if not xs or not ys:
        return False
    return not (xs == ys and xs.bit_count() == 1)


def build_absorbing_path(D: Digraph, ell: int | None = None, params: Params | None = None,
                         seed: int | None = 0, tries: int | None = None
                         ) -> tuple[OrientedWalk, list[tuple[int, int, int, int]]]:
    """Chain ``ell`` disjoint absorbers by connectors into a proper ADP.

    Absorbers are drawn at random (uniform arc ``cb``, then ``a`` and ``d``)
    among 4-tuples that absorb at least one outside pair; connectors for each
    link ``(d_i, a_{i+1})`` are chosen uniformly among those avoiding every
    vertex used so far.  ``ell`` defaults to ``floor(lam n / 8)`` with ``n``
    half the order.  Returns ``(P, registry)`` where the registry lists the
    absorber quadruples in path order.  The path has ``6 ell - 2`` vertices.
    Raises :class:`SupplyExhausted` naming the failing link.
    """
    params = params or Params()
    N = D.order
    if ell is None:
        ell = max(1, int(params.lam * (N // 2) / 8))
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if ell == 0:
        return OrientedWalk((), (), "path"), []
    if 6 * ell - 2 > N:
        raise SupplyExhausted(f"{ell} absorbers need {6 * ell - 2} vertices but D has {N}", 0)
    rng = np.random.default_rng(seed)
    out, inn = D.out_bits, D.in_bits
    arcs = np.array(list(D.arcs()), dtype=np.int64).reshape(-1, 2)
    tries = tries if tries is not None else 200 * max(N, 1)
    used = 0
    registry: list[tuple[int, int, int, int]] = []
    for i in range(ell):
        found = None
        for _ in range(tries):
            if not len(arcs):
                break
            c, b = (int(v) for v in arcs[int(rng.integers(len(arcs)))])
            if used >> c & 1 or used >> b & 1:
                continue
            busy = used | (1 << c) | (1 << b)
            apool = [v for v in iter_bits(inn[b] & ~busy)]
            if not apool:
                continue
            a = apool[int(rng.integers(len(apool)))]
            dpool = [v for v in iter_bits(out[c] & ~busy & ~(1 << a))]
            if not dpool:
                continue
            d = dpool[int(rng.integers(len(dpool)))]
            quad = (a, b, c, d)
            if _is_good(D, quad, used):
                found = quad
                break
        if found is None:
            raise SupplyExhausted(f"no free absorber for link {i}", i)
        registry.append(found)
        used |= as_mask(found)

    seq = list(registry[0])
    for i in range(ell - 1):
        d_i, a_next = registry[i][3], registry[i + 1][0]
        pool = [(a, b) for a in iter_bits(inn[d_i] & ~used)
                for b in iter_bits(out[a] & out[a_next] & ~used & ~(1 << a))]
        if not pool:
            raise SupplyExhausted(f"no free connector between absorbers {i} and {i + 1}", i)
        xa, ya = pool[int(rng.integers(len(pool)))]
        used |= (1 << xa) | (1 << ya)
        seq += [xa, ya] + list(registry[i + 1])
    P = OrientedWalk.alternating(seq, "path")
    if not verify_walk(D, P, anti_directed=True, proper=True):
        raise AssertionError("internal error: assembled absorbing path is not a proper ADP")
    return P, registry


def _absorbs(D: Digraph, quad: tuple[int, int, int, int], x: int, y: int) -> bool:
    a, b, c, d = quad
    return (D.has_arc(a, x) and D.has_arc(c, x) and D.has_arc(y, b) and D.has_arc(y, d))


def absorb(D: Digraph, P: OrientedWalk, registry: Sequence[tuple[int, int, int, int]],
           W) -> OrientedWalk:
    """Insert the vertices of ``W`` into ``P`` using free registry absorbers.

    ``W`` is paired in ascending order; each pair ``{x, y}`` may be absorbed as
    ``(x, y)`` or ``(y, x)``.  Pairs are matched to absorbers by a maximum
    bipartite assignment, and each matched segment ``abcd`` becomes ``axcbyd``.
    The endpoints of ``P`` are unchanged.  Raises :class:`AbsorbError` when
    ``|W|`` is odd, exceeds the capacity, meets ``P``, or a pair cannot be matched.
    """
    wv = sorted(set(int(v) for v in (W if not isinstance(W, int) else iter_bits(W))))
    if not wv:
        return P
    if len(wv) % 2:
        raise AbsorbError(f"|W| = {len(wv)} is odd")
    on_path = set(P.vertices)
    if on_path & set(wv):
        raise AbsorbError("W meets the absorbing path")
    pairs = [(wv[i], wv[i + 1]) for i in range(0, len(wv), 2)]
    if len(pairs) > len(registry):
        raise AbsorbError(f"{len(pairs)} pairs exceed the capacity of {len(registry)} absorbers")
    pos = {v: i for i, v in enumerate(P.vertices)}
    for quad in registry:
        idx = [pos.get(v) for v in quad]
        if None in idx or idx != list(range(idx[0], idx[0] + 4)):
            raise AbsorbError(f"registry entry {quad} is not a segment of P")

    # orientation choice per (pair, absorber); cost 0 where usable, 1 otherwise
    k, m = len(pairs), len(registry)
    orient = [[None] * m for _ in range(k)]
    cost = np.ones((k, m))
    for i, (x, y) in enumerate(pairs):
        for j, quad in enumerate(registry):
            if _absorbs(D, quad, x, y):
                orient[i][j] = (x, y)
            elif _absorbs(D, quad, y, x):
                orient[i][j] = (y, x)
            if orient[i][j] is not None:
                cost[i, j] = 0
    rows, cols = linear_sum_assignment(cost)
    for i, j in zip(rows, cols):
        if cost[i, j]:
            raise AbsorbError(f"pair {pairs[i]} has no free absorber", pairs[i])

    seq = list(P.vertices)
    # splice from the back so earlier positions stay valid
    for i, j in sorted(zip(rows, cols), key=lambda rc: -pos[registry[rc[1]][0]]):
        a, b, c, d = registry[j]
        x, y = orient[i][j]
        p = pos[a]
        seq[p:p + 4] = [a, x, c, b, y, d]
    out = OrientedWalk.alternating(seq, "path")
    if not verify_walk(D, out, anti_directed=True, proper=True):
        raise AssertionError("internal error: absorbed path is not a proper ADP")
    if out.endpoints != P.endpoints:
        raise AssertionError("internal error: absorption moved an endpoint")
    return out
