"""Anti-directed Hamiltonicity toolkit: bitset digraphs, extremal families,
exact solvers, lemma engines and a heuristic pipeline."""

from ._search import BudgetExceeded, SolverConfig
from .absorbing import (
    AbsorberTuple,
    AbsorbError,
    ConnectorPair,
    SupplyExhausted,
    absorb,
    build_absorbing_path,
    census,
    count_absorbers,
    count_connectors,
    enumerate_absorbers,
    enumerate_connectors,
    select_disjoint_family,
)
from .bipartite import bip_ham_cycle, bip_ham_path, moon_moser_condition
from .dense import StarPacking, maxcut_partition, proper_adp_from_dense_pair, star_bound, two_in_star_packing
from .digraph import (
    BipartiteGraph,
    Digraph,
    OrientedWalk,
    TwoFactorCert,
    arc_count,
    bipartite_view,
    induced,
    semi_degrees,
)
from .embed import embed_spanning
from .exact import (
    SolveStats,
    longest_proper_adp,
    solve_adhc,
    solve_adhp,
    solve_anti_two_factor,
    solve_directed_hc,
    twin_classes,
)
from .extremal import (
    ExtremalWitness,
    Partition5,
    Splitting,
    check_witness,
    distribute_Z,
    extremal_witness,
    find_connecting_edges,
    good_splitting,
    preprocess,
    reduce_to_adhc,
)
from .families import (
    f_partition,
    gen_anti_directed_cycle,
    gen_complete,
    gen_F,
    gen_F1,
    gen_F2,
    gen_ladder,
    gen_oriented_cycle,
    gen_random_digraph,
    gen_random_min_semidegree,
    gen_two_factor_pattern,
    recognize_exception,
)
from .naive import solve_adhc_naive
from .params import Params
from .pipeline import PipelineReport, counterexample_search, heuristic_adhc, run_search_trials
from .verify import Verdict, verify_two_factor, verify_walk

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "SolverConfig", "AbsorberTuple", "AbsorbError", "ConnectorPair",
    "SupplyExhausted", "absorb", "build_absorbing_path", "census", "count_absorbers",
    "count_connectors", "enumerate_absorbers", "enumerate_connectors",
    "select_disjoint_family", "bip_ham_cycle", "bip_ham_path", "moon_moser_condition",
    "StarPacking", "maxcut_partition", "proper_adp_from_dense_pair", "star_bound",
    "two_in_star_packing", "BipartiteGraph", "Digraph", "OrientedWalk", "TwoFactorCert",
    "arc_count", "bipartite_view", "induced", "semi_degrees", "embed_spanning",
    "SolveStats", "longest_proper_adp", "solve_adhc", "solve_adhp",
    "solve_anti_two_factor", "solve_directed_hc", "twin_classes", "ExtremalWitness",
    "Partition5", "Splitting", "check_witness", "distribute_Z", "extremal_witness",
    "find_connecting_edges", "good_splitting", "preprocess", "reduce_to_adhc",
    "f_partition", "gen_anti_directed_cycle", "gen_complete", "gen_F", "gen_F1",
    "gen_F2", "gen_ladder", "gen_oriented_cycle", "gen_random_digraph",
    "gen_random_min_semidegree", "gen_two_factor_pattern", "recognize_exception",
    "solve_adhc_naive", "Params", "PipelineReport", "counterexample_search",
    "heuristic_adhc", "run_search_trials", "Verdict", "verify_two_factor", "verify_walk",
]
