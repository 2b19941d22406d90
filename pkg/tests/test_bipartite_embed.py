from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antiham import (
    BipartiteGraph,
    BudgetExceeded,
    Digraph,
    SolverConfig,
    bip_ham_cycle,
    bip_ham_path,
    embed_spanning,
    gen_complete,
    gen_ladder,
    gen_two_factor_pattern,
    moon_moser_condition,
)

from conftest import digraphs


@st.composite
def bipartite_graphs(draw, max_side=4, unbalanced=False):
    a = draw(st.integers(1, max_side))
    b = a + (draw(st.sampled_from([0, 1])) if unbalanced else 0)
    left, right = list(range(a)), list(range(a, a + b))
    pairs = [(u, v) for u in left for v in right]
    edges = [p for p in pairs if draw(st.booleans()) or draw(st.booleans())]
    return BipartiteGraph.from_edges(left, right, edges, universe=a + b)


def _is_path(G, seq):
    return all(G.has_edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


def _brute_cycle(G):
    vs = [v for v in range(len(G.adj)) if G.vertices >> v & 1]
    if len(vs) < 4:
        return False
    first = vs[0]
    return any(_is_path(G, (first,) + p + (first,)) for p in permutations(vs[1:]))


def _brute_path(G, a, b):
    vs = [v for v in range(len(G.adj)) if G.vertices >> v & 1 and v not in (a, b)]
    return any(_is_path(G, (a,) + p + (b,)) for p in permutations(vs))


@given(bipartite_graphs())
def test_cycle_matches_brute_force(G):
    cyc = bip_ham_cycle(G)
    assert (cyc is not None) == _brute_cycle(G)
    if cyc is not None:
        assert sorted(cyc) == [v for v in range(len(G.adj)) if G.vertices >> v & 1]
        assert _is_path(G, cyc + cyc[:1])
        assert G.left >> cyc[0] & 1


@given(bipartite_graphs(unbalanced=True), st.data())
def test_path_matches_brute_force(G, data):
    nl, nr = G.left.bit_count(), G.right.bit_count()
    L = [v for v in range(len(G.adj)) if G.left >> v & 1]
    R = [v for v in range(len(G.adj)) if G.right >> v & 1]
    if nl == nr:
        a, b = data.draw(st.sampled_from(L)), data.draw(st.sampled_from(R))
    else:
        big = R if nr > nl else L
        if len(big) < 2:
            return
        a, b = data.draw(st.permutations(big))[:2]
    p = bip_ham_path(G, a, b)
    assert (p is not None) == _brute_path(G, a, b)
    if p is not None:
        assert p[0] == a and p[-1] == b and _is_path(G, p)
        assert len(p) == nl + nr


def test_path_end_validation():
    G = BipartiteGraph.from_edges([0, 1], [2, 3], [(0, 2), (1, 3), (0, 3)], universe=4)
    with pytest.raises(ValueError):
        bip_ham_path(G, 0, 1)
    with pytest.raises(ValueError):
        bip_ham_path(G, 0, 0)
    H = BipartiteGraph.from_edges([0], [1, 2, 3], [(0, 1)], universe=4)
    with pytest.raises(ValueError):
        bip_ham_path(H, 1, 2)


@given(bipartite_graphs(max_side=5))
def test_moon_moser_is_sufficient(G):
    if moon_moser_condition(G) and G.left.bit_count() >= 2:
        assert bip_ham_cycle(G) is not None


def test_ladder_cycle():
    G = gen_ladder(6)
    assert bip_ham_cycle(G) is not None


def _brute_embed(host, pattern):
    for f in permutations(range(host.order)):
        if all(host.has_arc(f[p], f[q]) for p, q in pattern.arcs()):
            return True
    return False


@given(digraphs(min_order=1, max_order=6, density=0.5), digraphs(min_order=1, max_order=6, density=0.3))
def test_embedding_matches_brute_force(host, pattern):
    if host.order != pattern.order:
        with pytest.raises(ValueError):
            embed_spanning(host, pattern)
        return
    f = embed_spanning(host, pattern)
    assert (f is not None) == _brute_embed(host, pattern)
    if f is not None:
        assert sorted(f) == list(range(host.order))
        assert all(host.has_arc(f[p], f[q]) for p, q in pattern.arcs())


def test_embedding_into_complete_and_budget():
    pat = gen_two_factor_pattern([4, 4])
    assert embed_spanning(gen_complete(8), pat) is not None
    assert embed_spanning(Digraph(0), Digraph(0)) == []
    with pytest.raises(BudgetExceeded):
        embed_spanning(gen_ladder(6, directed=True), gen_two_factor_pattern([6, 6]),
                       SolverConfig(node_limit=1))
