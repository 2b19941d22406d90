"""Independent certificate checkers.

These are the trust anchor for every solver in the package: they only look at
the host digraph and the certificate, never at solver internals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, OrientedWalk, TwoFactorCert

__all__ = ["Verdict", "verify_walk", "verify_two_factor"]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


_OK = Verdict(True)


def _fail(reason: str) -> Verdict:
    return Verdict(False, reason)


def verify_walk(D: Digraph, w: OrientedWalk, *, anti_directed: bool = False,
                proper: bool = False, spanning: bool = False,
                directed: bool = False) -> Verdict:
    """Check ``w`` against ``D`` and the requested structural predicates.

    Returns a falsy :class:`Verdict` naming the first violated predicate.
    """
    vs = w.vertices
    d = len(vs)
    if any(not 0 <= v < D.order for v in vs):
        return _fail("vertex out of range")
    if len(set(vs)) != d:
        return _fail("repeated vertex")
    if w.kind == "cycle" and d < 3:
        return _fail("cycle needs at least 3 vertices")
    for a, b in w.arcs():
        if not D.has_arc(a, b):
            return _fail(f"missing arc ({a},{b})")
    if anti_directed:
        if w.kind == "cycle" and d % 2:
            return _fail("anti-directed cycle must have even length")
        if not w.is_alternating():
            return _fail("consecutive arcs form a directed path")
    if proper:
        if w.kind != "path":
            return _fail("proper applies to paths only")
        if d % 2:
            return _fail("proper path must have an even number of vertices")
        if d and not (w.orientations[0] and w.orientations[-1]):
            return _fail("proper path must start and end with forward arcs")
        if not w.is_alternating():
            return _fail("consecutive arcs form a directed path")
    if directed and not all(w.orientations):
        return _fail("walk is not directed")
    if spanning and d != D.order:
        return _fail(f"walk covers {d} of {D.order} vertices")
    return _OK


def verify_two_factor(D: Digraph, c: TwoFactorCert) -> Verdict:
    seen: set[int] = set()
    for i, cyc in enumerate(c.cycles):
        if cyc.kind != "cycle":
            return _fail(f"component {i} is not a cycle")
        if len(cyc) < 4:
            return _fail(f"cycle {i} has fewer than 4 vertices")
        v = verify_walk(D, cyc, anti_directed=True)
        if not v:
            return _fail(f"cycle {i}: {v.reason}")
        overlap = seen.intersection(cyc.vertices)
        if overlap:
            return _fail(f"cycle {i} reuses vertex {min(overlap)}")
        seen.update(cyc.vertices)
    if len(seen) != D.order:
        missing = sorted(set(range(D.order)) - seen)
        return _fail(f"vertex {missing[0]} not covered")
    return _OK
