"""Run the heuristic pipeline on three kinds of input.

A dense random digraph is settled by a random bipartition, a near-extremal
digraph needs the extremal route, and an exceptional digraph is named.
"""
import time

from antiham import f_partition, gen_F, gen_F1, gen_random_digraph, heuristic_adhc, verify_walk


def show(label, D, **kw) -> None:
    t0 = time.perf_counter()
    rep = heuristic_adhc(D, seed=0, **kw)
    dt = time.perf_counter() - t0
    ok = rep.certificate is not None and verify_walk(D, rep.certificate, anti_directed=True, spanning=True)
    print(f"{label:28s} outcome={rep.outcome:10s} route={rep.route or '-':13s} "
          f"exception={rep.exception or '-':3s} verified={bool(ok)} {dt:.2f}s")


def main() -> None:
    show("random N=2000, p=0.75", gen_random_digraph(2000, 0.75, seed=1))
    p = f_partition(40, 6)
    near = gen_F(40, 6).with_arcs([(p["X1"][0], p["X1"][1]), (p["X2"][0], p["X2"][1])])
    show("F(40,6) plus two arcs", near, routes=("extremal",))
    show("F1(60)", gen_F1(60))


if __name__ == "__main__":
    main()
