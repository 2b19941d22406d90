from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from antiham import (
    BudgetExceeded,
    Digraph,
    SolverConfig,
    SolveStats,
    gen_complete,
    gen_F,
    gen_F1,
    gen_F2,
    gen_random_digraph,
    longest_proper_adp,
    solve_adhc,
    solve_adhc_naive,
    solve_adhp,
    solve_anti_two_factor,
    solve_directed_hc,
    twin_classes,
    verify_two_factor,
    verify_walk,
)

from conftest import digraphs


@given(digraphs(max_order=8, density=0.6))
def test_adhc_matches_oracle(D):
    cyc = solve_adhc(D)
    assert (cyc is not None) == oracles.has_adhc(D)
    if cyc is not None:
        assert verify_walk(D, cyc, anti_directed=True, spanning=True)


@given(digraphs(max_order=8, density=0.6))
def test_naive_matches_oracle(D):
    cyc = solve_adhc_naive(D)
    assert (cyc is not None) == oracles.has_adhc(D)
    if cyc is not None:
        assert verify_walk(D, cyc, anti_directed=True, spanning=True)


@given(digraphs(max_order=7, density=0.4))
def test_adhp_matches_oracle(D):
    p = solve_adhp(D)
    assert (p is not None) == oracles.has_adhp(D)
    if p is not None:
        assert verify_walk(D, p, anti_directed=True, spanning=True)


@given(digraphs(max_order=7, density=0.5))
def test_dhc_matches_oracle(D):
    c = solve_directed_hc(D)
    assert (c is not None) == oracles.has_dhc(D)
    if c is not None:
        assert verify_walk(D, c, directed=True, spanning=True)


@given(digraphs(min_order=4, max_order=8, density=0.6), st.integers(1, 2))
def test_two_factor_matches_oracle(D, k):
    best = oracles.min_anti_two_factor_cycles(D)
    cert = solve_anti_two_factor(D, max_cycles=k)
    assert (cert is not None) == (best is not None and best <= k)
    if cert is not None:
        assert verify_two_factor(D, cert)
        assert len(cert) <= k


def test_two_factor_unbounded():
    cert = solve_anti_two_factor(gen_complete(12))
    assert cert is not None and verify_two_factor(gen_complete(12), cert)
    assert solve_anti_two_factor(gen_complete(7)) is None


def test_small_and_odd_orders():
    assert solve_adhc(gen_complete(3)) is None
    assert solve_adhc(gen_complete(5)) is None
    assert solve_adhc(Digraph(0)) is None
    assert solve_adhp(Digraph(1)).vertices == (0,)
    assert solve_adhp(gen_complete(5)) is not None
    assert solve_directed_hc(Digraph(1)) is None
    assert solve_directed_hc(Digraph(2, [(0, 1), (1, 0)])) is None


def _brute_longest_proper(D):
    arcs = set(D.arcs())
    best = 0
    for d in range(2, D.order + 1, 2):
        for seq in permutations(range(D.order), d):
            if all(((seq[i], seq[i + 1]) if i % 2 == 0 else (seq[i + 1], seq[i])) in arcs
                   for i in range(d - 1)):
                best = d
                break
    return best


@given(digraphs(max_order=6, density=0.35))
def test_longest_proper_adp_is_maximum(D):
    w = longest_proper_adp(D)
    assert len(w) == _brute_longest_proper(D)
    if len(w):
        assert verify_walk(D, w, anti_directed=True, proper=True)


def test_budget_exceeded_is_not_absence():
    D = gen_random_digraph(20, 0.3, seed=2)
    with pytest.raises(BudgetExceeded):
        solve_adhc(D, SolverConfig(node_limit=1))


def test_stats_count_nodes():
    st_ = SolveStats()
    assert solve_adhc(gen_F1(12), stats=st_) is None
    assert st_.nodes > 0


@pytest.mark.parametrize("gen", [gen_F1, gen_F2, lambda n: gen_F(n, 2), gen_complete])
def test_twin_transpositions_are_automorphisms(gen):
    D = gen(10)
    classes = twin_classes(D)
    flat = [v for c in classes for v in c]
    assert len(flat) == len(set(flat)) and all(len(c) >= 2 for c in classes)
    for c in classes:
        for u in c:
            for v in c:
                if u < v:
                    perm = list(range(10))
                    perm[u], perm[v] = v, u
                    assert D.relabel(perm) == D


def test_twins_found_in_complete_digraph():
    assert twin_classes(gen_complete(6)) == [list(range(6))]


def test_exact_agrees_with_naive_on_dense_samples():
    rng = np.random.default_rng(7)
    for i in range(60):
        D = gen_random_digraph(10, float(rng.uniform(0.3, 0.7)), seed=i)
        assert (solve_adhc(D) is None) == (solve_adhc_naive(D) is None)


@given(digraphs(min_order=2, max_order=7, density=0.7))
def test_twin_classes_are_complete(D):
    # u ~ v exactly when swapping u and v is an automorphism
    N = D.order
    cls = {}
    for u in range(N):
        for v in range(u + 1, N):
            perm = list(range(N))
            perm[u], perm[v] = v, u
            if D.relabel(perm) == D:
                root = cls.setdefault(u, u)
                cls.setdefault(v, root)
    groups = {}
    for v, r in cls.items():
        groups.setdefault(r, []).append(v)
    expected = sorted(sorted(g) for g in groups.values())
    assert sorted(sorted(c) for c in twin_classes(D)) == expected
