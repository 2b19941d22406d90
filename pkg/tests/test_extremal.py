import math
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antiham import (
    Digraph,
    ExtremalWitness,
    Partition5,
    SolverConfig,
    check_witness,
    distribute_Z,
    extremal_witness,
    f_partition,
    find_connecting_edges,
    gen_complete,
    gen_F,
    gen_F2,
    good_splitting,
    preprocess,
    reduce_to_adhc,
    verify_walk,
)
from antiham.extremal import DistributionError, Splitting, is_connecting, iter_connecting_pairs, z_classes

from conftest import digraphs


def _masks(N, k):
    return {name: sum(1 << v for v in vs) for name, vs in f_partition(N, k).items()}


def _parts(N, k):
    m = _masks(N, k)
    return m["X1"], m["X2"], m["Y1"], m["Y2"]


def _brute_extremal(D, alpha):
    # shrinking A or B never raises a degree, so the smallest size suffices
    n = D.order / 2
    lo = max(math.ceil((1 - alpha) * n - 1e-9), 0)
    if lo > math.floor((1 + alpha) * n + 1e-9):
        return False
    cap = alpha * n + 1e-9
    for A in combinations(range(D.order), lo):
        for B in combinations(range(D.order), lo):
            if all(sum(D.has_arc(a, b) for b in B) <= cap for a in A) and \
               all(sum(D.has_arc(a, b) for a in A) <= cap for b in B):
                return True
    return False


@given(digraphs(min_order=4, max_order=7, density=0.6), st.sampled_from([0.25, 0.5, 0.75]))
def test_exact_witness_matches_brute_force(D, alpha):
    w = extremal_witness(D, alpha, mode="exact")
    assert (w is not None) == _brute_extremal(D, alpha)
    if w is not None:
        assert check_witness(D, w)


def test_witness_for_extremal_family():
    D = gen_F(8, 1)
    w = extremal_witness(D, 0.25, mode="exact")
    am, bm = w.a_mask, w.b_mask
    assert max(D.out_degree(a, bm) for a in w.A) == 0
    assert max(D.in_degree(b, am) for b in w.B) == 0


def test_complete_digraph_is_not_extremal():
    assert extremal_witness(gen_complete(8), 0.25, mode="exact") is None
    assert extremal_witness(gen_complete(8), 1.0, mode="exact") is not None


def test_check_witness_reasons():
    D = gen_F(8, 1)
    p = f_partition(8, 1)
    good = ExtremalWitness(tuple(p["Y1"] + p["X2"]), tuple(p["Y2"] + p["X2"]), 0.25)
    assert check_witness(D, good)
    small = ExtremalWitness((0,), (1,), 0.25)
    assert "outside" in check_witness(D, small).reason
    dense = ExtremalWitness(tuple(p["X1"] + p["Y1"]), tuple(p["X2"] + p["Y2"]), 0.25)
    assert "out-degree" in check_witness(D, dense).reason
    assert "out of range" in check_witness(D, ExtremalWitness((9,), (0,), 0.25)).reason


@pytest.mark.parametrize("N,k", [(20, 3), (40, 6), (60, 1)])
def test_local_search_finds_family_witness(N, k):
    D = gen_F(N, k)
    w = extremal_witness(D, 0.3, mode="local_search", seed=1)
    assert w is not None and check_witness(D, w)


def test_local_search_on_complete_is_none():
    assert extremal_witness(gen_complete(30), 0.3, mode="local_search") is None


def test_witness_argument_validation():
    with pytest.raises(ValueError):
        extremal_witness(gen_complete(18), 0.3, mode="exact")
    with pytest.raises(ValueError):
        extremal_witness(gen_complete(8), 0.0)
    with pytest.raises(ValueError):
        extremal_witness(gen_complete(8), 0.3, mode="guess")


@pytest.mark.parametrize("N,k", [(8, 1), (20, 3), (40, 6)])
def test_preprocess_recovers_generator_parts(N, k):
    D = gen_F(N, k)
    p = f_partition(N, k)
    w = ExtremalWitness(tuple(p["Y1"] + p["X2"]), tuple(p["Y2"] + p["X2"]), 0.25)
    part = preprocess(D, w)
    assert part.as_lists() == {**p, "Z": []}
    assert part.floors["d0(X2,X1)"] == len(p["X1"])
    assert part.floors["d+(Y1,X1)"] == len(p["X1"])
    assert part.floors["d-(X1,Y1)"] == len(p["Y1"])


def test_partition_overlap_rejected():
    with pytest.raises(ValueError):
        Partition5(0b11, 0b10, 0, 0, 0)


@pytest.mark.parametrize("N,k", [(16, 2), (20, 1), (20, 3), (40, 6)])
def test_single_moved_vertex_returns_home(N, k):
    D = gen_F(N, k)
    m = _masks(N, k)
    for v in range(N):
        parts = {name: mask & ~(1 << v) for name, mask in m.items()}
        P = Partition5(parts["X1"], parts["X2"], parts["Y1"], parts["Y2"], 1 << v)
        assert distribute_Z(D, P, 0.05) == (m["X1"], m["X2"], m["Y1"], m["Y2"])


def test_distribution_failure_names_vertices():
    N = 20
    m = _masks(N, 3)
    # vertex 0 loses every arc, so it fits no class
    D = Digraph(N, [(u, v) for u, v in gen_F(N, 3).arcs() if 0 not in (u, v)])
    P = Partition5(m["X1"], m["X2"], m["Y1"] & ~1, m["Y2"], 1)
    assert z_classes(D, P, 0.05) == {}
    with pytest.raises(DistributionError) as e:
        distribute_Z(D, P, 0.05)
    assert e.value.vertices == [0]


def _even_targets(parts):
    return {name: (m.bit_count() // 2, m.bit_count() - m.bit_count() // 2)
            for name, m in zip(("X1", "X2", "Y1", "Y2"), parts)}


def test_good_splitting_respects_targets():
    N = 40
    D = gen_F(N, 6)
    parts = _parts(N, 6)
    targets = _even_targets(parts)
    P1 = 1 << 6  # first X1 vertex forced into the first half
    s = good_splitting(D, parts, (P1, 0), targets, 0.05, 0.1, seed=3)
    assert s is not None
    assert s.X[1][1] >> 6 & 1
    for name, (t1, t2) in targets.items():
        store = s.X if name[0] == "X" else s.Y
        i = int(name[1])
        assert (store[i][1].bit_count(), store[i][2].bit_count()) == (t1, t2)
    assert s.sources & s.sinks == 0
    assert s.sources | s.sinks == D.all_mask


def test_good_splitting_validation():
    N = 20
    D = gen_F(N, 3)
    parts = _parts(N, 3)
    t = _even_targets(parts)
    with pytest.raises(ValueError):
        good_splitting(D, parts, (1, 1), t, 0.05, 0.1)
    with pytest.raises(ValueError):
        good_splitting(D, parts[:3] + (0,), None, t, 0.05, 0.1)
    with pytest.raises(ValueError):
        good_splitting(D, parts, None, {**t, "X1": (0, 7)}, 0.05, 0.1)
    with pytest.raises(ValueError):
        good_splitting(D, parts, None, {**t, "X1": (1, 1)}, 0.05, 0.1)
    with pytest.raises(ValueError):
        good_splitting(D, parts, None, {k: v for k, v in t.items() if k != "Y2"}, 0.05, 0.1)


def test_connecting_arcs_classification():
    N = 8
    parts = _parts(N, 1)  # Y1={0}, X1={1,2,3}, Y2={4}, X2={5,6,7}
    assert is_connecting(parts, 5, 6)      # X2 -> X2
    assert is_connecting(parts, 0, 4)      # Y1 -> Y2
    assert not is_connecting(parts, 0, 1)  # Y1 -> X1 is in the pattern
    assert not is_connecting(parts, 1, 5)  # X1 -> X2 is in the pattern
    assert not any(is_connecting(parts, u, v) for u, v in gen_F(N, 1).arcs())


def test_connecting_edges_in_exceptional_digraph():
    N = 8
    parts = _parts(N, 1)
    assert find_connecting_edges(gen_F2(N), parts) is None
    assert find_connecting_edges(gen_F2(N).with_arcs([(5, 6)]), parts) == ((0, 4), (5, 6), "ii")
    pairs = list(iter_connecting_pairs(gen_F(N, 1).with_arcs([(1, 2), (5, 6)]), parts))
    assert pairs == [((1, 2), (5, 6), "i")]


def test_reduction_builds_cycle_case_i():
    # one extra arc inside each X_i gives a case (i) pair
    N = 40
    a1, a2 = f_partition(N, 6)["X1"][:2]
    b1, b2 = f_partition(N, 6)["X2"][:2]
    D = gen_F(N, 6).with_arcs([(a1, a2), (b1, b2)])
    parts = _parts(N, 6)
    e1, e2, tag = find_connecting_edges(D, parts)
    assert tag == "i"
    # tails of X_i arcs go to half 3-i, heads to half i
    P1 = (1 << b1) | (1 << a2)
    P2 = (1 << a1) | (1 << b2)
    targets = {"X1": (7, 7), "X2": (7, 7), "Y1": (3, 3), "Y2": (3, 3)}
    s = good_splitting(D, parts, (P1, P2), targets, 0.05, 0.1, seed=0)
    assert s is not None
    cyc = reduce_to_adhc(D, s, (e1, e2), SolverConfig())
    assert cyc is not None
    assert verify_walk(D, cyc, anti_directed=True, spanning=True)
    assert {e1, e2} <= set(cyc.arcs())


def test_reduction_rejects_bad_hypotheses():
    N = 20
    D = gen_F(N, 3).with_arcs([(3, 4), (13, 14)])
    parts = _parts(N, 3)
    t = _even_targets(parts)
    s = good_splitting(D, parts, None, t, 0.05, 0.5, seed=0)
    assert isinstance(s, Splitting)
    with pytest.raises(ValueError):
        reduce_to_adhc(D, s, ((3, 4), (4, 5)))
    with pytest.raises(ValueError):
        reduce_to_adhc(D, s, ((0, 1), (3, 4)))
