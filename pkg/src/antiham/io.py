"""Text formats: digraph edge lists, walk certificates, DOT export, vertex-set args."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .digraph import Digraph, OrientedWalk, TwoFactorCert, as_mask, members

__all__ = [
    "ParseError",
    "parse",
    "serialize",
    "parse_certificate",
    "serialize_certificate",
    "to_dot",
    "parse_vertex_set",
    "read_digraph",
    "write_digraph",
]

CERT_KINDS = ("adhc", "adp", "2factor", "dhc")


class ParseError(ValueError):
    pass


def _lines(data: bytes | str) -> list[tuple[int, str]]:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    out = []
    for lineno, raw in enumerate(data.split("\n"), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        out.append((lineno, s))
    return out


def _ints(s: str, lineno: int, count: int) -> list[int]:
    parts = s.split()
    if len(parts) != count:
        raise ParseError(f"line {lineno}: expected {count} integers, got {s!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer token in {s!r}") from None


def parse(data: bytes | str) -> Digraph:
    """Parse the ``N M`` + ``u v`` edge-list format."""
    lines = _lines(data)
    if not lines:
        raise ParseError("missing header line")
    lineno, header = lines[0]
    n, m = _ints(header, lineno, 2)
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative header value")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} arcs but {len(body)} arc lines follow")
    arcs = []
    for lineno, s in body:
        u, v = _ints(s, lineno, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex id out of range in arc ({u},{v})")
        if u == v:
            raise ParseError(f"line {lineno}: loop arc ({u},{u})")
        arcs.append((u, v))
    return Digraph(n, arcs)


def serialize(D: Digraph) -> bytes:
    arcs = list(D.arcs())
    lines = [f"{D.order} {len(arcs)}"] + [f"{u} {v}" for u, v in arcs]
    return ("\n".join(lines) + "\n").encode()


def read_digraph(path: str | Path) -> Digraph:
    if str(path) == "-":
        import sys
        return parse(sys.stdin.buffer.read())
    return parse(Path(path).read_bytes())


def write_digraph(D: Digraph, path: str | Path) -> None:
    Path(path).write_bytes(serialize(D))


def serialize_certificate(kind: str, walks: Iterable[OrientedWalk] | TwoFactorCert | OrientedWalk) -> bytes:
    if kind not in CERT_KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    if isinstance(walks, TwoFactorCert):
        walks = walks.cycles
    elif isinstance(walks, OrientedWalk):
        walks = [walks]
    lines = [kind]
    for w in walks:
        vs = " ".join(str(v) for v in w.vertices)
        bits = "".join("+" if b else "-" for b in w.orientations)
        lines.append(f"{vs} | {bits}")
    return ("\n".join(lines) + "\n").encode()


def parse_certificate(data: bytes | str) -> tuple[str, list[OrientedWalk]]:
    lines = _lines(data)
    if not lines:
        raise ParseError("empty certificate")
    kind = lines[0][1]
    if kind not in CERT_KINDS:
        raise ParseError(f"unknown certificate kind {kind!r}")
    walk_kind = "path" if kind == "adp" else "cycle"
    walks = []
    for lineno, s in lines[1:]:
        if "|" not in s:
            raise ParseError(f"line {lineno}: missing '|' separator")
        left, right = s.split("|", 1)
        try:
            vs = [int(t) for t in left.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: bad vertex list") from None
        bits = right.strip()
        if any(ch not in "+-" for ch in bits):
            raise ParseError(f"line {lineno}: orientation bits must be '+' or '-'")
        try:
            walks.append(OrientedWalk(tuple(vs), tuple(ch == "+" for ch in bits), walk_kind))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return kind, walks


def to_dot(D: Digraph, walk: OrientedWalk | None = None, name: str = "D") -> str:
    highlight = set(walk.arcs()) if walk is not None else set()
    lines = [f"digraph {name} {{"]
    for v in range(D.order):
        lines.append(f"  {v};")
    for u, v in D.arcs():
        attr = " [color=red, penwidth=2]" if (u, v) in highlight else ""
        lines.append(f"  {u} -> {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_vertex_set(text: str) -> list[int]:
    """Parse ``"1,2,5"`` or ``"@file"`` (whitespace/comma separated ids)."""
    text = text.strip()
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    toks = [t for t in text.replace(",", " ").split() if t]
    try:
        return members(as_mask(int(t) for t in toks))
    except ValueError:
        raise ParseError(f"bad vertex set {text!r}") from None
