"""The two exceptional digraphs: minimum semi-degree n, yet no ADHC.

For each order we prove absence with the exact solver, show the two-cycle
anti-directed 2-factor they do contain, and list the arcs of F2 whose
addition still leaves no ADHC.
"""
from antiham import gen_F1, gen_F2, semi_degrees, solve_adhc, solve_anti_two_factor, verify_two_factor


def main() -> None:
    for N in (8, 10, 12):
        for name, gen in (("F1", gen_F1), ("F2", gen_F2)):
            D = gen(N)
            cert = solve_anti_two_factor(D, max_cycles=2)
            sizes = [len(c) for c in cert.cycles]
            print(f"{name}({N}): semi-degree {semi_degrees(D)[2]}, "
                  f"ADHC {'yes' if solve_adhc(D) else 'no'}, "
                  f"2-factor cycle lengths {sizes} ({verify_two_factor(D, cert).reason or 'verified'})")
        D = gen_F2(N)
        stubborn = [(u, v) for u in range(N) for v in range(N)
                    if u != v and not D.has_arc(u, v) and solve_adhc(D.with_arcs([(u, v)])) is None]
        print(f"  F2({N}) stays ADHC-free after adding any of {len(stubborn)} arcs, e.g. {stubborn[:3]}")


if __name__ == "__main__":
    main()
