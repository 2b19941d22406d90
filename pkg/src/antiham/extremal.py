"""Extremal-case machinery: witnesses of near-extremal structure, the
five-part preprocessing partition, distribution of leftover vertices,
splittings into two bipartite halves, connecting edges, and the reduction
that stitches two bipartite Hamiltonian paths into an anti-directed
Hamiltonian cycle.

Throughout, ``n`` is half the order of the digraph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from ._search import BudgetExceeded, SolverConfig
from .bipartite import bip_ham_path
from .digraph import Digraph, OrientedWalk, as_mask, bipartite_view, iter_bits, members
from .exact import walk_from_roles
from .verify import Verdict, verify_walk

__all__ = [
    "ExtremalWitness",
    "check_witness",
    "extremal_witness",
    "Partition5",
    "preprocess",
    "DistributionError",
    "z_classes",
    "distribute_Z",
    "Splitting",
    "good_splitting",
    "is_connecting",
    "iter_connecting_pairs",
    "find_connecting_edges",
    "reduce_to_adhc",
]

_EPS = 1e-9


def _half(D: Digraph) -> float:
    return D.order / 2


def _fl(x: float) -> int:
    return math.floor(x + _EPS)


# ---------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class ExtremalWitness:
    A: tuple[int, ...]
    B: tuple[int, ...]
    alpha: float

    @property
    def a_mask(self) -> int:
        return as_mask(self.A)

    @property
    def b_mask(self) -> int:
        return as_mask(self.B)


def _max_out(D: Digraph, am: int, bm: int) -> int:
    return max(((D.out_bits[v] & bm).bit_count() for v in iter_bits(am)), default=0)


def _max_in(D: Digraph, am: int, bm: int) -> int:
    return max(((D.in_bits[v] & am).bit_count() for v in iter_bits(bm)), default=0)


def check_witness(D: Digraph, w: ExtremalWitness) -> Verdict:
    """Size window ``(1-a)n..(1+a)n`` and both degree caps ``a n``."""
    n = _half(D)
    am, bm = w.a_mask, w.b_mask
    if (am | bm) >> D.order:
        return Verdict(False, "witness vertex out of range")
    lo, hi = (1 - w.alpha) * n, (1 + w.alpha) * n
    for name, m in (("A", am), ("B", bm)):
        if not lo - _EPS <= m.bit_count() <= hi + _EPS:
            return Verdict(False, f"|{name}|={m.bit_count()} outside [{lo:g}, {hi:g}]")
    cap = w.alpha * n + _EPS
    if _max_out(D, am, bm) > cap:
        return Verdict(False, f"max out-degree from A into B is {_max_out(D, am, bm)} > {w.alpha * n:g}")
    if _max_in(D, am, bm) > cap:
        return Verdict(False, f"max in-degree of B from A is {_max_in(D, am, bm)} > {w.alpha * n:g}")
    return Verdict(True)


def _grow(D: Digraph, am: int, bm: int, t: int, hi: int) -> tuple[int, int]:
    # add vertices (lowest index first) while both caps stay at t
    out, inn = D.out_bits, D.in_bits
    changed = True
    while changed:
        changed = False
        for v in range(D.order):
            b = 1 << v
            if not am & b and am.bit_count() < hi and (out[v] & bm).bit_count() <= t:
                if all((inn[u] & (am | b)).bit_count() <= t for u in iter_bits(bm & out[v])):
                    am |= b
                    changed = True
            if not bm & b and bm.bit_count() < hi and (inn[v] & am).bit_count() <= t:
                if all((out[u] & (bm | b)).bit_count() <= t for u in iter_bits(am & inn[v])):
                    bm |= b
                    changed = True
    return am, bm


def _exact_scan(D: Digraph, m: int, t: int) -> tuple[int, int] | None:
    """Sets ``A``, ``B`` of size ``m`` with both caps at most ``t``, or None."""
    N = D.order
    out = D.out_bits
    for bset in combinations(range(N), m):
        bm = as_mask(bset)
        # contrapositive pruning: too many arcs into B excludes v from A
        cand = [v for v in range(N) if (out[v] & bm).bit_count() <= t]
        if len(cand) < m:
            continue
        load = {u: 0 for u in bset}
        chosen: list[int] = []

        def rec(i: int) -> bool:
            if len(chosen) == m:
                return True
            if len(cand) - i < m - len(chosen):
                return False
            v = cand[i]
            hit = [u for u in iter_bits(out[v] & bm)]
            if all(load[u] < t for u in hit):
                for u in hit:
                    load[u] += 1
                chosen.append(v)
                if rec(i + 1):
                    return True
                chosen.pop()
                for u in hit:
                    load[u] -= 1
            return rec(i + 1)

        if rec(0):
            return as_mask(chosen), bm
    return None


def extremal_witness(D: Digraph, alpha: float, mode: str = "exact",
                     seed: int | None = 0, max_seeds: int | None = None) -> ExtremalWitness | None:
    """Find ``A``, ``B`` certifying that ``D`` is ``alpha``-extremal.

    ``exact`` (order at most 16) scans every ``B`` of the smallest allowed
    size; since shrinking either set never raises a degree, a witness exists
    iff one of that size does.  The smallest cap that works is used and the
    sets are then grown greedily.  None from ``exact`` proves that no witness
    exists; None from ``local_search`` is inconclusive.

    ``local_search`` starts from ``B = V - N+(v)`` for seeded choices of ``v``
    and alternates ``A = {u : deg+(u, B) <= a n}``,
    ``B = {u : deg-(u, A) <= a n}`` until stable, then trims to the window.
    """
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    N = D.order
    n = _half(D)
    lo = max(math.ceil((1 - alpha) * n - _EPS), 0)
    hi = _fl((1 + alpha) * n)
    cap = _fl(alpha * n)
    if lo > N or lo > hi:
        return None
    if mode == "exact":
        if N > 16:
            raise ValueError("exact mode is limited to digraphs on at most 16 vertices")
        for t in range(cap + 1):
            found = _exact_scan(D, lo, t)
            if found is not None:
                am, bm = _grow(D, found[0], found[1], t, hi)
                w = ExtremalWitness(tuple(members(am)), tuple(members(bm)), alpha)
                if not check_witness(D, w):
                    raise AssertionError("internal error: exact witness fails its own check")
                return w
        return None
    if mode not in ("local_search", "search"):
        raise ValueError(f"unknown mode {mode!r}")
    out, inn = D.out_bits, D.in_bits
    rng = np.random.default_rng(seed)
    order = rng.permutation(N).tolist()
    if max_seeds is not None:
        order = order[:max_seeds]
    for v in order:
        bm = D.all_mask & ~out[v]
        am = 0
        for _ in range(20):
            new_a = sum(1 << u for u in range(N) if (out[u] & bm).bit_count() <= cap)
            new_b = sum(1 << u for u in range(N) if (inn[u] & new_a).bit_count() <= cap)
            if new_a == am and new_b == bm:
                break
            am, bm = new_a, new_b
        am = _trim(D, am, bm, hi, outward=True)
        bm = _trim(D, bm, am, hi, outward=False)
        if am.bit_count() < lo or bm.bit_count() < lo:
            continue
        w = ExtremalWitness(tuple(members(am)), tuple(members(bm)), alpha)
        if check_witness(D, w):
            return w
    return None


def _trim(D: Digraph, keep: int, other: int, hi: int, outward: bool) -> int:
    # drop the vertices with the most arcs across until the set fits
    excess = keep.bit_count() - hi
    if excess <= 0:
        return keep
    nb = D.out_bits if outward else D.in_bits
    ranked = sorted(iter_bits(keep), key=lambda v: (-(nb[v] & other).bit_count(), -v))
    for v in ranked[:excess]:
        keep &= ~(1 << v)
    return keep


# ------------------------------------------------------------ preprocessing

_PARTS = ("X1", "X2", "Y1", "Y2")


@dataclass(frozen=True)
class Partition5:
    """Disjoint ``X1, X2, Y1, Y2, Z`` covering the vertex set, as bitmasks.

    ``floors`` holds the measured minimum degrees between the four main parts
    (None for an empty source set).
    """

    X1: int
    X2: int
    Y1: int
    Y2: int
    Z: int
    floors: dict[str, int | None] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        seen = 0
        for m in (self.X1, self.X2, self.Y1, self.Y2, self.Z):
            if seen & m:
                raise ValueError("partition parts overlap")
            seen |= m

    def part(self, name: str) -> int:
        return getattr(self, name)

    def as_lists(self) -> dict[str, list[int]]:
        return {k: members(self.part(k)) for k in (*_PARTS, "Z")}


def _floor(D: Digraph, src: int, dst: int, kind: str) -> int | None:
    vals = []
    for v in iter_bits(src):
        o = (D.out_bits[v] & dst).bit_count()
        i = (D.in_bits[v] & dst).bit_count()
        vals.append({"+": o, "-": i, "0": min(o, i)}[kind])
    return min(vals) if vals else None


def degree_floors(D: Digraph, X1: int, X2: int, Y1: int, Y2: int) -> dict[str, int | None]:
    """Minimum degrees along the arc patterns of the extremal configuration."""
    X = {1: X1, 2: X2}
    Y = {1: Y1, 2: Y2}
    f: dict[str, int | None] = {}
    for i in (1, 2):
        j = 3 - i
        f[f"d0(X{j},X{i})"] = _floor(D, X[j], X[i], "0")
        f[f"d-(Y{j},X{i})"] = _floor(D, Y[j], X[i], "-")
        f[f"d+(Y{i},X{i})"] = _floor(D, Y[i], X[i], "+")
        f[f"d0(Y{i},Y{i})"] = _floor(D, Y[i], Y[i], "0")
        f[f"d-(X{i},Y{i})"] = _floor(D, X[i], Y[i], "-")
        f[f"d+(X{j},Y{i})"] = _floor(D, X[j], Y[i], "+")
    return f


def preprocess(D: Digraph, w: ExtremalWitness, alpha: float | None = None) -> Partition5:
    """Five-part partition derived from a witness.

    ``X1~ = V - (A | B)``, ``X2~ = A & B``, ``Y1~ = A - B``, ``Y2~ = B - A``;
    vertices with degree deficits above ``alpha^(1/3) n`` towards the parts
    they should be dense to are moved to ``Z``.
    """
    alpha = w.alpha if alpha is None else alpha
    am, bm = w.a_mask, w.b_mask
    x1t = D.all_mask & ~(am | bm)
    x2t = am & bm
    y1t = am & ~bm
    y2t = bm & ~am
    slack = alpha ** (1 / 3) * _half(D)
    out, inn = D.out_bits, D.in_bits

    def short(deg: int, m: int) -> bool:
        return deg < m.bit_count() - slack - _EPS

    y1h = sum(1 << v for v in iter_bits(y1t)
              if short((inn[v] & x2t).bit_count(), x2t) or short((inn[v] & y1t).bit_count(), y1t))
    y2h = sum(1 << v for v in iter_bits(y2t)
              if short((out[v] & x2t).bit_count(), x2t) or short((out[v] & y2t).bit_count(), y2t))
    x1h = sum(1 << v for v in iter_bits(x1t)
              if short((inn[v] & y1t).bit_count(), y1t) or short((out[v] & y2t).bit_count(), y2t)
              or short(min((out[v] & x2t).bit_count(), (inn[v] & x2t).bit_count()), x2t))
    X1, X2, Y1, Y2 = x1t & ~x1h, x2t, y1t & ~y1h, y2t & ~y2h
    return Partition5(X1, X2, Y1, Y2, x1h | y1h | y2h, degree_floors(D, X1, X2, Y1, Y2))


class DistributionError(ValueError):
    """Some leftover vertices fit none of the six classes."""

    def __init__(self, vertices: list[int]):
        super().__init__(f"vertices {vertices} match no distribution class")
        self.vertices = vertices


def _in_z(D: Digraph, z: int, src: int, dst: int, thr: float) -> bool:
    return ((D.out_bits[z] & dst).bit_count() >= thr - _EPS
            and (D.in_bits[z] & src).bit_count() >= thr - _EPS)


def z_classes(D: Digraph, p: Partition5, gamma: float) -> dict[int, tuple[str, str]]:
    """First matching class of each ``z`` and the part it is placed in.

    Class labels follow the fixed order: ``XX``, ``YY``, ``XX'``, ``YY'``,
    ``Z1``, ``Z2`` (each with ``i = 1`` before ``i = 2``).  Vertices matching
    nothing are absent from the result.
    """
    thr = 5 * gamma * _half(D)
    X = {1: p.X1, 2: p.X2}
    Y = {1: p.Y1, 2: p.Y2}
    res: dict[int, tuple[str, str]] = {}
    for z in iter_bits(p.Z):
        for i in (1, 2):
            if _in_z(D, z, X[i], X[i], thr):
                res[z] = (f"Z(X{i},X{i})", f"X{3 - i}")
                break
        else:
            for i in (1, 2):
                if _in_z(D, z, Y[i], Y[i], thr):
                    res[z] = (f"Z(Y{i},Y{i})", f"Y{i}")
                    break
            else:
                for i in (1, 2):
                    if _in_z(D, z, X[i], X[3 - i], thr):
                        res[z] = (f"Z(X{i},X{3 - i})", f"Y{3 - i}")
                        break
                else:
                    for i in (1, 2):
                        if _in_z(D, z, Y[i], Y[3 - i], thr):
                            res[z] = (f"Z(Y{i},Y{3 - i})", f"X{i}")
                            break
                    else:
                        if all(_in_z(D, z, Y[i], X[j], thr) for i in (1, 2) for j in (1, 2)):
                            res[z] = ("Z1", "Y1")
                        elif all(_in_z(D, z, X[i], Y[j], thr) for i in (1, 2) for j in (1, 2)):
                            res[z] = ("Z2", "Y2")
    return res


def distribute_Z(D: Digraph, p: Partition5, gamma: float) -> tuple[int, int, int, int]:
    """Place every ``z`` into ``X1, X2, Y1, Y2``; raises DistributionError
    listing the vertices that fit no class."""
    cls = z_classes(D, p, gamma)
    missing = [z for z in iter_bits(p.Z) if z not in cls]
    if missing:
        raise DistributionError(missing)
    parts = {k: p.part(k) for k in _PARTS}
    for z, (_, dest) in cls.items():
        parts[dest] |= 1 << z
    return parts["X1"], parts["X2"], parts["Y1"], parts["Y2"]


# ------------------------------------------------------------------ splitting

@dataclass(frozen=True)
class Splitting:
    """Halves ``X[i][j]``, ``Y[i][j]`` (bitmasks, ``i, j`` in 1..2) with the
    derived sides ``U_i = X_{3-i}^i | Y_i^i`` and ``V_i = X_i^i | Y_i^{3-i}``.

    ``delta`` and ``q`` hold the measured minimum degree of each half and the
    number of its vertices with low degree in the whole bipartite graph.
    """

    X: dict[int, dict[int, int]]
    Y: dict[int, dict[int, int]]
    delta: tuple[int, int] = (0, 0)
    q: tuple[int, int] = (0, 0)

    def U(self, i: int) -> int:
        return self.X[3 - i][i] | self.Y[i][i]

    def V(self, i: int) -> int:
        return self.X[i][i] | self.Y[i][3 - i]

    @property
    def sources(self) -> int:
        return self.U(1) | self.U(2)

    @property
    def sinks(self) -> int:
        return self.V(1) | self.V(2)


def _measure(D: Digraph, s: Splitting, gamma: float) -> tuple[tuple[int, int], tuple[int, int]]:
    n = _half(D)
    S, T = s.sources, s.sinks
    deltas, qs = [], []
    for i in (1, 2):
        G = bipartite_view(D, s.U(i), s.V(i))
        deltas.append(G.min_degree() if G.vertices else 0)
        thr = (1 - gamma) * n / 2
        low = 0
        for v in iter_bits(G.vertices):
            dg = (D.out_bits[v] & T).bit_count() if S >> v & 1 else (D.in_bits[v] & S).bit_count()
            if dg < thr - _EPS:
                low += 1
        qs.append(low)
    return (deltas[0], deltas[1]), (qs[0], qs[1])


def good_splitting(D: Digraph, parts: tuple[int, int, int, int],
                   preassigned: tuple[int, int] | None,
                   targets: dict[str, tuple[int, int]], gamma: float, beta: float,
                   seed: int | None = 0, retries: int = 200) -> Splitting | None:
    """Random splitting with prescribed half sizes that is good, or None.

    ``parts`` is ``(X1, X2, Y1, Y2)``; ``preassigned = (P1, P2)`` holds the
    vertices forced into the first and second halves of their part; ``targets``
    maps each part name to its two half sizes.  A splitting is good when both
    bipartite halves have minimum degree at least ``gamma n`` and at most
    ``beta n`` low-degree vertices.  Inconsistent targets raise ValueError;
    exhausting ``retries`` returns None.
    """
    n = _half(D)
    P1, P2 = preassigned or (0, 0)
    if P1 & P2:
        raise ValueError(f"vertices {members(P1 & P2)} are preassigned to both halves")
    masks = dict(zip(_PARTS, parts))
    seen = 0
    for m in parts:
        if seen & m:
            raise ValueError("parts overlap")
        seen |= m
    if seen != D.all_mask:
        raise ValueError("parts do not cover the vertex set")
    if (P1 | P2) & ~seen:
        raise ValueError("preassigned vertex outside the parts")
    for name in _PARTS:
        if name not in targets:
            raise ValueError(f"missing target for {name}")
        t1, t2 = targets[name]
        size = masks[name].bit_count()
        if t1 < 0 or t2 < 0 or t1 + t2 != size:
            raise ValueError(f"targets {targets[name]} for {name} do not sum to {size}")
        for t in (t1, t2):
            if abs(size / 2 - t) > beta * n + _EPS:
                raise ValueError(f"target {t} for {name} is more than beta*n from {size}/2")
        if (P1 & masks[name]).bit_count() > t1 or (P2 & masks[name]).bit_count() > t2:
            raise ValueError(f"preassigned vertices of {name} exceed its targets")
    rng = np.random.default_rng(seed)
    thr = gamma * n
    for _ in range(max(retries, 1)):
        halves = {}
        for name in _PARTS:
            m = masks[name]
            t1, _t2 = targets[name]
            fixed1, fixed2 = P1 & m, P2 & m
            free = members(m & ~(fixed1 | fixed2))
            rng.shuffle(free)
            k = t1 - fixed1.bit_count()
            h1 = fixed1 | as_mask(free[:k])
            halves[name] = {1: h1, 2: m & ~h1}
        s = Splitting({1: halves["X1"], 2: halves["X2"]}, {1: halves["Y1"], 2: halves["Y2"]})
        delta, q = _measure(D, s, gamma)
        if min(delta) >= thr - _EPS and max(q) <= beta * n + _EPS:
            return Splitting(s.X, s.Y, delta, q)
    return None


# ------------------------------------------------------- connecting edges

def _side(parts: tuple[int, int, int, int], v: int) -> str | None:
    for name, m in zip(_PARTS, parts):
        if m >> v & 1:
            return name
    return None


def is_connecting(parts: tuple[int, int, int, int], u: int, v: int) -> bool:
    """Arc ``uv`` leaves the extremal pattern: ``X_i -> X_i | Y_i`` or
    ``Y_i -> Y_{3-i} | X_{3-i}``."""
    su, sv = _side(parts, u), _side(parts, v)
    if su is None or sv is None:
        return False
    i = su[1]
    if su[0] == "X":
        return sv[1] == i
    return sv[1] != i


def _tail_side(parts, u: int) -> int:
    # index j with u in U_j for a connecting arc out of u
    su = _side(parts, u)
    i = int(su[1])
    return 3 - i if su[0] == "X" else i


def iter_connecting_pairs(D: Digraph, parts: tuple[int, int, int, int]
                          ) -> Iterator[tuple[tuple[int, int], tuple[int, int], str]]:
    """All unordered pairs of vertex-disjoint connecting arcs with their case
    tag: ``"i"`` when the tails lie in different ``U`` sides, ``"ii"`` when
    they share one.  Arcs are scanned in lexicographic order."""
    edges = [(u, v) for u, v in D.arcs() if is_connecting(parts, u, v)]
    for a in range(len(edges)):
        u, v = edges[a]
        for b in range(a + 1, len(edges)):
            x, y = edges[b]
            if len({u, v, x, y}) < 4:
                continue
            tag = "i" if _tail_side(parts, u) != _tail_side(parts, x) else "ii"
            yield (u, v), (x, y), tag


def find_connecting_edges(D: Digraph, parts: tuple[int, int, int, int]
                          ) -> tuple[tuple[int, int], tuple[int, int], str] | None:
    """First pair from :func:`iter_connecting_pairs`, or None."""
    return next(iter_connecting_pairs(D, parts), None)


# -------------------------------------------------------------- reduction

def reduce_to_adhc(D: Digraph, s: Splitting, edges: tuple[tuple[int, int], tuple[int, int]],
                   cfg: SolverConfig | None = None, seed: int | None = 0,
                   exact: bool | None = None) -> OrientedWalk | None:
    """ADHC through the arcs ``uv`` and ``u'v'`` and Hamiltonian paths of the
    two bipartite halves ``G_i = (U_i, V_i)``.

    Case (i): one tail in each ``U_i`` and ``|U_i| = |V_i|`` for both ``i``;
    the paths run ``u..v'`` in one half and ``u'..v`` in the other.  Case (ii):
    both tails in ``U_i``, ``|U_i| = |V_i| + 1`` and ``|V_{3-i}| = |U_{3-i}| + 1``.
    Raises ValueError when neither hypothesis holds.  Returns None when a
    path search fails (inconclusive); otherwise a verified cycle.
    """
    cfg = cfg or SolverConfig()
    (u, v), (u2, v2) = edges
    for a, b in edges:
        if not D.has_arc(a, b):
            raise ValueError(f"({a},{b}) is not an arc")
    if len({u, v, u2, v2}) < 4:
        raise ValueError("edges are not independent")
    U = {i: s.U(i) for i in (1, 2)}
    V = {i: s.V(i) for i in (1, 2)}
    size = {k: {i: m[i].bit_count() for i in (1, 2)} for k, m in (("U", U), ("V", V))}

    def side(m: dict[int, int], x: int) -> int | None:
        return next((i for i in (1, 2) if m[i] >> x & 1), None)

    tu, tu2, hv, hv2 = side(U, u), side(U, u2), side(V, v), side(V, v2)
    if None in (tu, tu2, hv, hv2):
        raise ValueError("edge tails must lie in U sides and heads in V sides")
    if tu != tu2:
        if tu == 2:
            (u, v), (u2, v2) = (u2, v2), (u, v)
            tu, tu2, hv, hv2 = tu2, tu, hv2, hv
        if hv != 2 or hv2 != 1:
            raise ValueError("case (i) needs u in U1, v in V2, u' in U2, v' in V1")
        if any(size["U"][i] != size["V"][i] for i in (1, 2)):
            raise ValueError("case (i) needs |U_i| = |V_i|")
        ends = {1: (u, v2), 2: (u2, v)}
    else:
        i = tu
        if hv != 3 - i or hv2 != 3 - i:
            raise ValueError("case (ii) needs both heads in V_{3-i}")
        if size["U"][i] != size["V"][i] + 1 or size["V"][3 - i] != size["U"][3 - i] + 1:
            raise ValueError("case (ii) needs |U_i| = |V_i| + 1 and |V_{3-i}| = |U_{3-i}| + 1")
        ends = {i: (u, u2), 3 - i: (v2, v)}

    paths = {}
    for i in (1, 2):
        G = bipartite_view(D, U[i], V[i])
        use_exact = exact if exact is not None else G.vertices.bit_count() <= 2 * cfg.exact_cutoff
        try:
            p = bip_ham_path(G, ends[i][0], ends[i][1], cfg, seed=seed, exact=use_exact)
        except BudgetExceeded:
            return None
        if p is None:
            return None
        paths[i] = p
    if tu != tu2:
        seq = paths[1] + paths[2]
    else:
        seq = paths[tu] + paths[3 - tu]
    w = walk_from_roles(seq, s.sources, "cycle")
    if not verify_walk(D, w, anti_directed=True, spanning=True):
        raise AssertionError("internal error: stitched cycle fails verification")
    return w
