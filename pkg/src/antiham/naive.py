"""Brute-force ADHC oracle used to cross-check the exact solver.

Enumerates cyclic vertex orders with vertex 0 fixed, rejecting a prefix as
soon as one of its arcs is missing.  Shares no code with the role-search solver.
"""

from __future__ import annotations

from .digraph import Digraph, OrientedWalk

__all__ = ["solve_adhc_naive"]


def solve_adhc_naive(D: Digraph) -> OrientedWalk | None:
    N = D.order
    if N < 4 or N % 2:
        return None
    arcs = set(D.arcs())

    def ok(a: int, b: int, forward: bool) -> bool:
        return ((a, b) if forward else (b, a)) in arcs

    for first_forward in (True, False):
        order = [0]
        used = [False] * N
        used[0] = True

        def rec() -> bool:
            i = len(order) - 1
            forward = (i % 2 == 0) == first_forward
            if len(order) == N:
                # closing edge has index N-1, which is odd
                return ok(order[-1], order[0], not first_forward)
            for v in range(1, N):
                if used[v] or not ok(order[-1], v, forward):
                    continue
                used[v] = True
                order.append(v)
                if rec():
                    return True
                order.pop()
                used[v] = False
            return False

        if rec():
            bits = tuple((i % 2 == 0) == first_forward for i in range(N))
            return OrientedWalk(tuple(order), bits, "cycle")
    return None
