import random

import pytest

from hdecomp.core import Dihypergraph, Edge
from hdecomp.errors import (EmptyBody, EmptyVertexSet, HeadInBody, InputSyntaxError,
                            Location, UnknownVertex)
from hdecomp.instances import random_dihypergraph
from hdecomp.parser import parse, serialize


def test_parse_triangle(triangle: Dihypergraph) -> None:
    text = "vertices: 1 2 3\nedge: 1 2 -> 3\nedge: 1 3 -> 2\n"
    assert parse(text) == triangle


def test_parse_comments_and_blank_lines() -> None:
    text = "# instance\n\nvertices: a b  # two vertices\nedge: a -> b # unit\n"
    h = parse(text)
    assert h.names == ("a", "b")
    assert h.edges == {Edge(frozenset({0}), 1)}


def test_parse_single_vertex() -> None:
    h = parse("vertices: a\n")
    assert h.vertices == {0}
    assert not h.edges


@pytest.mark.parametrize(
    "text, error, location",
    [
        ("edge: 1 -> 2\n", InputSyntaxError, Location(1, 1)),
        ("vertices:\n", EmptyVertexSet, Location(1, 1)),
        ("vertices: 1 2\nedge: 1 -> 3\n", UnknownVertex, Location(2, 12)),
        ("vertices: 1 2\nedge: 1 2 -> 2\n", HeadInBody, Location(2, 14)),
        ("vertices: 1 2\nedge: -> 2\n", EmptyBody, Location(2, 7)),
        ("vertices: 1 2\nedge: 1 2\n", InputSyntaxError, Location(2, 1)),
        ("vertices: 1 2\nedge: 1 -> 2 1\n", InputSyntaxError, Location(2, 9)),
        ("vertices: 1 2\nvertices: 3\n", InputSyntaxError, Location(2, 1)),
        ("vertices: 1 2\n  arc: 1 -> 2\n", InputSyntaxError, Location(2, 3)),
        ("", InputSyntaxError, Location(1, 1)),
    ],
)
def test_parse_errors_carry_locations(text: str, error: type, location: Location) -> None:
    with pytest.raises(error) as e:
        parse(text)
    assert e.value.location == location
    assert str(e.value).startswith(f"line {location.line}, column {location.column}: ")


def test_serialize(running_example: Dihypergraph) -> None:
    assert serialize(running_example) == (
        "vertices: 1 2 3 4 5 6 7\n"
        "edge: 1 2 -> 3\n"
        "edge: 2 3 -> 7\n"
        "edge: 3 -> 1\n"
        "edge: 4 5 -> 6\n"
        "edge: 5 -> 7\n"
        "edge: 5 6 -> 2\n"
    )


def test_parse_inverts_serialize() -> None:
    rng = random.Random(13)
    for _ in range(50):
        h = random_dihypergraph(rng, rng.randint(1, 8), rng.randint(0, 8))
        assert parse(serialize(h)) == h
