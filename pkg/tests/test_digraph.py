import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from antiham import (
    BipartiteGraph,
    Digraph,
    OrientedWalk,
    TwoFactorCert,
    arc_count,
    bipartite_view,
    induced,
    semi_degrees,
)
from antiham.digraph import as_mask, iter_bits, members

from conftest import digraphs


def test_bit_helpers():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert members(as_mask([4, 1, 1])) == [1, 4]
    assert as_mask(None) == 0
    with pytest.raises(ValueError):
        as_mask([-1])


def test_construction_rejects_bad_arcs():
    with pytest.raises(ValueError):
        Digraph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Digraph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Digraph(-1)
    with pytest.raises(ValueError):
        Digraph(3).with_arcs([(0, 5)])
    with pytest.raises(ValueError):
        Digraph.from_matrix(np.eye(3, dtype=bool))


def test_complete_digraph_degrees():
    D = Digraph.complete(6)
    assert D.num_arcs() == 30
    assert semi_degrees(D) == (5, 5, 5, 10)


def test_semi_degrees_example():
    D = Digraph(3, [(0, 1), (1, 2), (2, 0), (0, 2)])
    assert semi_degrees(D) == (1, 1, 1, 2)
    assert semi_degrees(Digraph(0)) == (0, 0, 0, 0)


@given(digraphs())
def test_matrix_round_trip(D):
    assert Digraph.from_matrix(D.to_matrix()) == D
    assert Digraph.from_out_bits(D.out_bits) == D
    assert D.num_arcs() == int(D.to_matrix().sum())


@given(digraphs())
def test_in_out_bits_are_transposes(D):
    for u, v in D.arcs():
        assert D.in_bits[v] >> u & 1
    assert sum(b.bit_count() for b in D.in_bits) == D.num_arcs()


@given(digraphs(min_order=1), st.randoms())
def test_relabel_preserves_structure(D, rnd):
    perm = list(range(D.order))
    rnd.shuffle(perm)
    E = D.relabel(perm)
    assert E.num_arcs() == D.num_arcs()
    assert all(E.has_arc(perm[u], perm[v]) for u, v in D.arcs())
    assert semi_degrees(E) == semi_degrees(D)


@given(digraphs(min_order=1), st.data())
def test_induced_matches_arc_count(D, data):
    S = data.draw(st.sets(st.integers(0, D.order - 1)))
    H, labels = induced(D, S)
    assert labels == sorted(S)
    assert H.num_arcs() == arc_count(D, S, S)
    for u, v in H.arcs():
        assert D.has_arc(labels[u], labels[v])


@given(digraphs(min_order=2), st.data())
def test_bipartite_view_edges(D, data):
    U = data.draw(st.sets(st.integers(0, D.order - 1)))
    V = set(range(D.order)) - U
    G = bipartite_view(D, U, V)
    assert G.num_edges() == arc_count(D, U, V)
    for u in U:
        for v in V:
            assert G.has_edge(u, v) == D.has_arc(u, v)


def test_bipartite_overlap_rejected():
    with pytest.raises(ValueError):
        bipartite_view(Digraph(3), [0, 1], [1, 2])
    with pytest.raises(ValueError):
        BipartiteGraph.from_edges([0], [1], [(0, 2)], universe=3)


def test_walk_arcs_and_alternation():
    w = OrientedWalk.alternating([0, 1, 2, 3], "cycle")
    assert w.arcs() == [(0, 1), (2, 1), (2, 3), (0, 3)]
    assert w.is_alternating()
    p = OrientedWalk.directed([0, 1, 2], "path")
    assert not p.is_alternating()
    assert p.endpoints == (0, 2)
    with pytest.raises(ValueError):
        OrientedWalk((0, 1, 2), (True,), "path")
    with pytest.raises(ValueError):
        OrientedWalk((0, 1), (True,), "loop")


def test_two_factor_edge_set():
    c1 = OrientedWalk.alternating([0, 1, 2, 3], "cycle")
    c2 = OrientedWalk.alternating([4, 5, 6, 7], "cycle")
    cert = TwoFactorCert((c1, c2))
    assert len(cert) == 2
    assert len(cert.edge_set()) == 8
