"""Digraph core: bitset-backed digraphs, walks, certificates and bipartite views.

Vertex sets are plain Python ints used as bitsets (bit ``v`` set iff ``v`` is a
member).  Every public function that takes a vertex set also accepts any
iterable of vertex ids; see :func:`as_mask`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Digraph",
    "BipartiteGraph",
    "OrientedWalk",
    "TwoFactorCert",
    "as_mask",
    "members",
    "iter_bits",
    "popcount",
    "semi_degrees",
    "arc_count",
    "induced",
    "bipartite_view",
]


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def members(mask: int) -> list[int]:
    return list(iter_bits(mask))


def popcount(x: int) -> int:
    return x.bit_count()


def as_mask(vs: int | Iterable[int] | None) -> int:
    """Convert a vertex collection (or an already-built bitmask) to a bitmask."""
    if vs is None:
        return 0
    if isinstance(vs, (int, np.integer)):
        return int(vs)
    m = 0
    for v in vs:
        m |= 1 << int(v)
    return m


def _rows_to_ints(mat: np.ndarray) -> list[int]:
    packed = np.packbits(mat.astype(bool), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


class Digraph:
    """Loopless simple digraph on vertices ``0..order-1``.

    ``out_bits[v]`` / ``in_bits[v]`` are bitsets of out- and in-neighbours.
    Instances are treated as immutable.
    """

    __slots__ = ("order", "out_bits", "in_bits", "_narcs")

    def __init__(self, order: int, arcs: Iterable[tuple[int, int]] = ()):
        if order < 0:
            raise ValueError("order must be non-negative")
        out = [0] * order
        inn = [0] * order
        for u, v in arcs:
            u, v = int(u), int(v)
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"arc ({u},{v}) out of range for order {order}")
            if u == v:
                raise ValueError(f"loop arc ({u},{u}) not allowed")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.order = order
        self.out_bits = tuple(out)
        self.in_bits = tuple(inn)
        self._narcs = sum(b.bit_count() for b in out)

    @classmethod
    def from_out_bits(cls, out_bits: Sequence[int]) -> "Digraph":
        n = len(out_bits)
        inn = [0] * n
        for u, b in enumerate(out_bits):
            if b >> u & 1:
                raise ValueError(f"loop arc ({u},{u}) not allowed")
            if b >> n:
                raise ValueError(f"vertex {u} has an out-neighbour out of range")
            for v in iter_bits(b):
                inn[v] |= 1 << u
        return cls._raw(tuple(int(b) for b in out_bits), tuple(inn))

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> "Digraph":
        """Build from a square boolean adjacency matrix (``mat[u, v]`` = arc u->v)."""
        mat = np.asarray(mat, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if mat.diagonal().any():
            raise ValueError("loop arcs not allowed")
        return cls._raw(tuple(_rows_to_ints(mat)), tuple(_rows_to_ints(mat.T)))

    @classmethod
    def _raw(cls, out_bits: tuple[int, ...], in_bits: tuple[int, ...]) -> "Digraph":
        d = cls.__new__(cls)
        d.order = len(out_bits)
        d.out_bits = out_bits
        d.in_bits = in_bits
        d._narcs = sum(b.bit_count() for b in out_bits)
        return d

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        full = (1 << n) - 1
        bits = tuple(full & ~(1 << v) for v in range(n))
        return cls._raw(bits, bits)

    # -- queries -----------------------------------------------------------
    @property
    def all_mask(self) -> int:
        return (1 << self.order) - 1

    def __len__(self) -> int:
        return self.order

    def num_arcs(self) -> int:
        return self._narcs

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_bits[u] >> v & 1)

    def out_nbrs(self, v: int) -> list[int]:
        return members(self.out_bits[v])

    def in_nbrs(self, v: int) -> list[int]:
        return members(self.in_bits[v])

    def out_degree(self, v: int, within: int | None = None) -> int:
        b = self.out_bits[v]
        return (b if within is None else b & within).bit_count()

    def in_degree(self, v: int, within: int | None = None) -> int:
        b = self.in_bits[v]
        return (b if within is None else b & within).bit_count()

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, b in enumerate(self.out_bits):
            for v in iter_bits(b):
                yield u, v

    def to_matrix(self) -> np.ndarray:
        n = self.order
        mat = np.zeros((n, n), dtype=bool)
        for u, v in self.arcs():
            mat[u, v] = True
        return mat

    def with_arcs(self, extra: Iterable[tuple[int, int]]) -> "Digraph":
        out = list(self.out_bits)
        inn = list(self.in_bits)
        for u, v in extra:
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"arc ({u},{v}) out of range for order {self.order}")
            if u == v:
                raise ValueError(f"loop arc ({u},{u}) not allowed")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        return Digraph._raw(tuple(out), tuple(inn))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Return the copy in which vertex ``v`` is renamed ``perm[v]``."""
        n = self.order
        if sorted(perm) != list(range(n)):
            raise ValueError("perm must be a permutation of the vertex range")
        return Digraph(n, ((perm[u], perm[v]) for u, v in self.arcs()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.out_bits == other.out_bits

    def __hash__(self) -> int:
        return hash(self.out_bits)

    def __repr__(self) -> str:
        return f"Digraph(order={self.order}, arcs={self._narcs})"


@dataclass(frozen=True)
class BipartiteGraph:
    """Undirected bipartite graph between bitsets ``left`` and ``right``.

    ``adj`` is indexed by vertex id over a universe of ``len(adj)`` ids; entries
    for vertices outside ``left | right`` are zero.
    """

    left: int
    right: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.left & self.right:
            raise ValueError("bipartite sides overlap")

    @property
    def vertices(self) -> int:
        return self.left | self.right

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def num_edges(self) -> int:
        return sum(self.adj[v].bit_count() for v in iter_bits(self.left))

    def min_degree(self) -> int:
        vs = members(self.vertices)
        return min((self.adj[v].bit_count() for v in vs), default=0)

    @classmethod
    def from_edges(cls, left: Iterable[int], right: Iterable[int],
                   edges: Iterable[tuple[int, int]], universe: int | None = None) -> "BipartiteGraph":
        lm, rm = as_mask(left), as_mask(right)
        size = universe if universe is not None else (lm | rm).bit_length()
        adj = [0] * size
        for u, v in edges:
            if not ((lm >> u & 1 and rm >> v & 1) or (rm >> u & 1 and lm >> v & 1)):
                raise ValueError(f"edge ({u},{v}) does not cross the bipartition")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(lm, rm, tuple(adj))


@dataclass(frozen=True)
class OrientedWalk:
    """A vertex sequence with one orientation bit per traversed edge.

    ``orientations[i]`` is True when the arc is ``(vertices[i], vertices[i+1])``
    and False when it is ``(vertices[i+1], vertices[i])``.  For a cycle the last
    bit describes the edge between ``vertices[-1]`` and ``vertices[0]``.
    """

    vertices: tuple[int, ...]
    orientations: tuple[bool, ...]
    kind: str = "path"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "orientations", tuple(bool(b) for b in self.orientations))
        if self.kind not in ("path", "cycle"):
            raise ValueError(f"unknown walk kind {self.kind!r}")
        d = len(self.vertices)
        want = d if self.kind == "cycle" else max(d - 1, 0)
        if len(self.orientations) != want:
            raise ValueError(f"{self.kind} on {d} vertices needs {want} orientation bits, "
                             f"got {len(self.orientations)}")

    @classmethod
    def alternating(cls, vertices: Sequence[int], kind: str = "path",
                    first_forward: bool = True) -> "OrientedWalk":
        d = len(vertices)
        k = d if kind == "cycle" else max(d - 1, 0)
        bits = tuple((i % 2 == 0) == first_forward for i in range(k))
        return cls(tuple(vertices), bits, kind)

    @classmethod
    def directed(cls, vertices: Sequence[int], kind: str = "cycle") -> "OrientedWalk":
        d = len(vertices)
        k = d if kind == "cycle" else max(d - 1, 0)
        return cls(tuple(vertices), (True,) * k, kind)

    def __len__(self) -> int:
        return len(self.vertices)

    def arcs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        d = len(vs)
        out = []
        for i, fwd in enumerate(self.orientations):
            a, b = vs[i], vs[(i + 1) % d]
            out.append((a, b) if fwd else (b, a))
        return out

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(a) for a in self.arcs())

    @property
    def endpoints(self) -> tuple[int, int] | None:
        if not self.vertices:
            return None
        return self.vertices[0], self.vertices[-1]

    def is_alternating(self) -> bool:
        bits = self.orientations
        k = len(bits)
        if self.kind == "cycle":
            return k >= 2 and all(bits[i] != bits[(i + 1) % k] for i in range(k))
        return all(bits[i] != bits[i + 1] for i in range(k - 1))


@dataclass(frozen=True)
class TwoFactorCert:
    cycles: tuple[OrientedWalk, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))

    def __len__(self) -> int:
        return len(self.cycles)

    def edge_set(self) -> frozenset[frozenset[int]]:
        es: set[frozenset[int]] = set()
        for c in self.cycles:
            es |= c.edge_set()
        return frozenset(es)


def semi_degrees(D: Digraph) -> tuple[int, int, int, int]:
    """Return ``(delta_out, delta_in, delta0, delta_total)``."""
    if D.order == 0:
        return 0, 0, 0, 0
    outs = [b.bit_count() for b in D.out_bits]
    ins = [b.bit_count() for b in D.in_bits]
    d_out, d_in = min(outs), min(ins)
    return d_out, d_in, min(d_out, d_in), min(o + i for o, i in zip(outs, ins))


def arc_count(D: Digraph, A, B) -> int:
    """Number of arcs ``(a, b)`` with ``a`` in ``A`` and ``b`` in ``B``."""
    am, bm = as_mask(A), as_mask(B)
    return sum((D.out_bits[a] & bm).bit_count() for a in iter_bits(am))


def induced(D: Digraph, S) -> tuple[Digraph, list[int]]:
    """Induced subdigraph on ``S`` relabelled to ``0..|S|-1``.

    Returns the digraph and ``labels`` with ``labels[new] = old``.
    """
    labels = members(as_mask(S))
    if labels and labels[-1] >= D.order:
        raise ValueError("vertex set exceeds the digraph's vertex range")
    index = {old: new for new, old in enumerate(labels)}
    sm = as_mask(labels)
    arcs = [(index[u], index[v]) for u in labels for v in iter_bits(D.out_bits[u] & sm)]
    return Digraph(len(labels), arcs), labels


def bipartite_view(D: Digraph, U, V) -> BipartiteGraph:
    """Bipartite graph with edge ``{u, v}`` iff ``(u, v)`` is an arc, ``u in U``, ``v in V``."""
    um, vm = as_mask(U), as_mask(V)
    if um & vm:
        raise ValueError("bipartite sides overlap")
    adj = [0] * D.order
    for u in iter_bits(um):
        adj[u] = D.out_bits[u] & vm
    for v in iter_bits(vm):
        adj[v] = D.in_bits[v] & um
    return BipartiteGraph(um, vm, tuple(adj))
