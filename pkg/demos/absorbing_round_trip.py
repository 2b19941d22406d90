"""Build an absorbing path in a complete digraph and swallow a few vertices.

The path chains absorbers with connectors; each absorber segment abcd can be
rewritten as axcbyd, taking in one outside pair without moving the ends.
"""
import numpy as np

from antiham import absorb, build_absorbing_path, census, gen_complete, verify_walk


def main(N: int = 30, ell: int = 4, seed: int = 7) -> None:
    D = gen_complete(N)
    counts = census(D, "absorbers", pairs=[(0, 1)])
    print(f"K{N}: {counts[(0, 1)]} absorbers for the pair (0, 1)")
    P, registry = build_absorbing_path(D, ell, seed=seed)
    print(f"absorbing path on {len(P)} vertices with ends {P.endpoints}")
    rest = sorted(set(range(N)) - set(P.vertices))
    W = np.random.default_rng(seed).choice(rest, 2 * ell, replace=False).tolist()
    Q = absorb(D, P, registry, W)
    print(f"absorbed {sorted(W)} -> {len(Q)} vertices, ends {Q.endpoints}, "
          f"{verify_walk(D, Q, anti_directed=True, proper=True).reason or 'proper ADP verified'}")


if __name__ == "__main__":
    main()
