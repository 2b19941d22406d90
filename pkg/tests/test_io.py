import pytest
from hypothesis import given
from hypothesis import strategies as st

from antiham import Digraph, OrientedWalk, TwoFactorCert
from antiham.io import (
    ParseError,
    parse,
    parse_certificate,
    parse_vertex_set,
    read_digraph,
    serialize,
    serialize_certificate,
    to_dot,
    write_digraph,
)

from conftest import digraphs


@given(digraphs())
def test_serialize_round_trip(D):
    assert parse(serialize(D)) == D


def test_parse_with_comments_and_blank_lines():
    D = parse("# header\n3 2\n\n0 1\n# arc\n1 2\n")
    assert sorted(D.arcs()) == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text", [
    "",
    "3\n",
    "3 1\n",
    "3 1\n0 3\n",
    "3 1\n1 1\n",
    "3 1\n0 x\n",
    "-1 0\n",
    "2 1\n0 1\n1 0\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_file_round_trip(tmp_path):
    D = Digraph(4, [(0, 1), (2, 3), (3, 0)])
    path = tmp_path / "g.dg"
    write_digraph(D, path)
    assert read_digraph(path) == D


@given(st.permutations(range(6)), st.lists(st.booleans(), min_size=6, max_size=6))
def test_certificate_round_trip(vs, bits):
    w = OrientedWalk(tuple(vs), tuple(bits), "cycle")
    kind, walks = parse_certificate(serialize_certificate("adhc", w))
    assert kind == "adhc" and walks == [w]


def test_certificate_kinds():
    c = TwoFactorCert((OrientedWalk.alternating([0, 1, 2, 3], "cycle"),
                       OrientedWalk.alternating([4, 5, 6, 7], "cycle")))
    kind, walks = parse_certificate(serialize_certificate("2factor", c))
    assert kind == "2factor" and len(walks) == 2
    p = OrientedWalk.alternating([3, 1, 0, 2], "path")
    kind, walks = parse_certificate(serialize_certificate("adp", p))
    assert kind == "adp" and walks[0] == p
    with pytest.raises(ValueError):
        serialize_certificate("hamilton", p)


@pytest.mark.parametrize("text", ["", "bogus\n0 1 | +\n", "adhc\n0 1 2 3\n",
                                  "adhc\n0 1 2 3 | +-*-\n", "adhc\n0 1 2 3 | +-\n",
                                  "adhc\n0 a | +-\n"])
def test_certificate_parse_errors(text):
    with pytest.raises(ParseError):
        parse_certificate(text)


def test_dot_export_highlights_walk():
    D = Digraph(4, [(0, 1), (2, 1), (2, 3), (0, 3)])
    dot = to_dot(D, OrientedWalk.alternating([0, 1, 2, 3], "cycle"))
    assert dot.startswith("digraph D {")
    assert dot.count("color=red") == 4


def test_vertex_set_parsing(tmp_path):
    assert parse_vertex_set("3,1, 2") == [1, 2, 3]
    f = tmp_path / "s.txt"
    f.write_text("5 4\n0\n")
    assert parse_vertex_set(f"@{f}") == [0, 4, 5]
    with pytest.raises(ParseError):
        parse_vertex_set("1,x")
