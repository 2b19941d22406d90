import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from antiham import (
    AbsorbError,
    AbsorberTuple,
    ConnectorPair,
    Digraph,
    OrientedWalk,
    SupplyExhausted,
    absorb,
    build_absorbing_path,
    census,
    count_absorbers,
    count_connectors,
    enumerate_absorbers,
    enumerate_connectors,
    f_partition,
    gen_complete,
    gen_F1,
    gen_random_digraph,
    select_disjoint_family,
    verify_walk,
)

from conftest import digraphs


@pytest.mark.parametrize("N", [6, 7, 8, 9, 10])
def test_complete_closed_forms(N):
    D = gen_complete(N)
    assert count_absorbers(D, 0, 1) == (N - 2) * (N - 3) * (N - 4) * (N - 5)
    assert count_connectors(D, 0, 1) == (N - 2) * (N - 3)


@given(digraphs(min_order=2, max_order=7, density=0.6), st.data())
def test_counts_match_brute_force(D, data):
    x, y = data.draw(st.permutations(range(D.order)))[:2]
    assert count_absorbers(D, x, y) == oracles.count_absorbers(D, x, y)
    assert count_connectors(D, x, y) == oracles.count_connectors(D, x, y)
    absorbers = enumerate_absorbers(D, x, y)
    connectors = enumerate_connectors(D, x, y)
    assert len(absorbers) == count_absorbers(D, x, y)
    assert len(connectors) == count_connectors(D, x, y)
    assert all(t.is_valid(D) for t in absorbers)
    assert all(t.is_valid(D) for t in connectors)
    assert [t.vertices for t in absorbers] == sorted(t.vertices for t in absorbers)


def test_absorber_yields_proper_paths():
    D = gen_random_digraph(9, 0.7, seed=3)
    for t in enumerate_absorbers(D, 0, 1, limit=50):
        a, b, c, d = t.vertices
        assert verify_walk(D, OrientedWalk.alternating([a, b, c, d]), anti_directed=True, proper=True)
        assert verify_walk(D, OrientedWalk.alternating([a, 0, c, b, 1, d]), anti_directed=True, proper=True)


def test_enumeration_limit_and_validation():
    D = gen_complete(8)
    assert len(enumerate_absorbers(D, 0, 1, limit=7)) == 7
    assert len(enumerate_connectors(D, 0, 1, limit=3)) == 3
    with pytest.raises(ValueError):
        count_absorbers(D, 2, 2)
    with pytest.raises(ValueError):
        count_connectors(D, 0, 8)
    assert not AbsorberTuple(0, 1, 2, 3, (0, 5)).is_valid(D)
    assert not ConnectorPair(0, 0, (2, 3)).is_valid(D)


def test_source_free_target_has_nothing():
    # no arc enters x, so no a can point at it
    arcs = [(u, v) for u in range(8) for v in range(8) if u != v and v != 0]
    D = Digraph(8, arcs)
    assert all(count_absorbers(D, 0, y) == 0 and count_connectors(D, 0, y) == 0 for y in range(1, 8))


def test_census_parallel_matches_serial():
    D = gen_random_digraph(10, 0.6, seed=11)
    serial = census(D, "absorbers")
    assert census(D, "absorbers", jobs=3) == serial
    assert list(serial) == [(x, y) for x in range(10) for y in range(10) if x != y]
    assert census(D, "connectors", pairs=[(3, 4)]) == {(3, 4): count_connectors(D, 3, 4)}
    with pytest.raises(ValueError):
        census(D, "stars")


def test_exceptional_digraph_has_absorber_free_pairs():
    # for x, y in X1 both a and c must lie in N-(x) = Y1 | X2 and point into
    # N+(y) = X2 | Y2; only y1 does so (via the digon), and a != c
    N = 16
    D = gen_F1(N)
    counts = census(D, "absorbers")
    assert min(counts.values()) == 0
    X1 = f_partition(N, 1)["X1"]
    assert all(counts[(x, y)] == 0 for x in X1 for y in X1 if x != y)
    conn = census(D, "connectors")
    assert sorted(p for p, c in conn.items() if c == 0) == [(0, 8), (8, 0)]


def test_select_disjoint_family_properties():
    cand = {t: [tuple(int(v) for v in np.random.default_rng(t).choice(30, 3, replace=False))
                for _ in range(40)] for t in range(12)}
    s = select_disjoint_family(cand, b=0.6, c=0.05, seed=5, n=30)
    used = [v for tup in s.family for v in tup]
    assert len(used) == len(set(used))
    assert len(s.family) <= int(0.6 * 30 / 3)
    assert s.floor == pytest.approx(1.5)
    assert set(s.shortfalls) == {t for t, h in s.hits.items() if h < s.floor}
    again = select_disjoint_family(cand, b=0.6, c=0.05, seed=5, n=30)
    assert again.family == s.family
    assert select_disjoint_family({}, 0.5, 0.1).family == []


@pytest.mark.parametrize("host", ["complete", "dense"])
def test_connector_reservoir_hits_every_target(host):
    N = 40
    D = gen_complete(N) if host == "complete" else gen_random_digraph(N, 0.9, seed=1)
    cand = {(x, y): [(c.a, c.b) for c in enumerate_connectors(D, x, y)]
            for x in range(N) for y in range(N) if x != y}
    s = select_disjoint_family(cand, b=0.5, c=0.0, seed=0)
    assert min(s.hits.values()) > 0


@pytest.mark.parametrize("N,ell", [(12, 1), (20, 3), (40, 5)])
def test_absorbing_path_shape(N, ell):
    D = gen_complete(N)
    P, reg = build_absorbing_path(D, ell, seed=N)
    assert len(P) == 6 * ell - 2
    assert verify_walk(D, P, anti_directed=True, proper=True)
    assert len(reg) == ell
    for quad in reg:
        i = P.vertices.index(quad[0])
        assert P.vertices[i:i + 4] == quad


def test_absorbing_path_edge_cases():
    D = gen_complete(10)
    P, reg = build_absorbing_path(D, 0)
    assert len(P) == 0 and reg == []
    P, reg = build_absorbing_path(D, 2)  # 6*2-2 = 10 vertices: spanning
    assert sorted(P.vertices) == list(range(10))
    with pytest.raises(SupplyExhausted) as e:
        build_absorbing_path(gen_complete(20), 4)
    assert e.value.link == 0
    with pytest.raises(ValueError):
        build_absorbing_path(D, -1)
    with pytest.raises(SupplyExhausted):
        build_absorbing_path(Digraph(10), 1)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_absorb_round_trip(seed, ell):
    N = 30
    D = gen_complete(N)
    P, reg = build_absorbing_path(D, ell, seed=seed)
    rest = sorted(set(range(N)) - set(P.vertices))
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, ell + 1))
    W = rng.choice(rest, 2 * k, replace=False).tolist()
    out = absorb(D, P, reg, W)
    assert verify_walk(D, out, anti_directed=True, proper=True)
    assert out.endpoints == P.endpoints
    assert set(out.vertices) == set(P.vertices) | set(W)


def test_absorb_errors():
    D = gen_complete(20)
    P, reg = build_absorbing_path(D, 2, seed=1)
    rest = sorted(set(range(20)) - set(P.vertices))
    with pytest.raises(AbsorbError):
        absorb(D, P, reg, rest[:3])
    with pytest.raises(AbsorbError):
        absorb(D, P, reg, rest[:6])
    with pytest.raises(AbsorbError):
        absorb(D, P, reg, [P.vertices[0], rest[0]])
    with pytest.raises(AbsorbError):
        absorb(D, P, [(rest[0], rest[1], rest[2], rest[3])], rest[4:6])
    assert absorb(D, P, reg, []) == P


def test_absorb_reports_unmatched_pair():
    # remove every arc into x so no absorber can take the pair containing it
    D = gen_complete(12)
    P, reg = build_absorbing_path(D, 1, seed=0)
    x, y = sorted(set(range(12)) - set(P.vertices))[:2]
    E = Digraph(12, [(u, v) for u, v in D.arcs() if v != x and v != y])
    with pytest.raises(AbsorbError) as e:
        absorb(E, P, reg, [x, y])
    assert e.value.pair == (x, y)
