"""
This module contains the reader and writer for the line-oriented instance format.

    # comment
    vertices: 1 2 3
    edge: 1 2 -> 3
    edge: 1 3 -> 2

The `vertices:` line comes first; vertex names are whitespace-free tokens
other than `->`. Errors carry the line and column of the offending token.
"""

from __future__ import annotations

import logging as log
import re
from pathlib import Path

from .core import Dihypergraph, Edge
from .errors import (EmptyBody, EmptyVertexSet, HeadInBody, InputSyntaxError,
                     Location, UnknownVertex)

VERTICES_KEYWORD = "vertices:"
EDGE_KEYWORD = "edge:"
ARROW = "->"

_TOKEN = re.compile(r"\S+")


def _tokens(line: str) -> list[tuple[str, int]]:
    """Return (token, 1-based column) pairs of a line without its comment."""
    line = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def parse(text: str) -> Dihypergraph:
    """Parse an instance document into a validated dihypergraph."""
    names: dict[str, int] = {}
    edges: set[Edge] = set()
    declared = False

    for number, line in enumerate(text.splitlines(), start=1):
        tokens = _tokens(line)
        if not tokens:
            continue
        keyword, column = tokens[0]
        here = Location(number, column)

        if keyword == VERTICES_KEYWORD:
            if declared:
                raise InputSyntaxError("duplicate 'vertices:' line", here)
            if len(tokens) == 1:
                raise EmptyVertexSet("no vertices declared", here)
            for name, col in tokens[1:]:
                if name == ARROW:
                    raise InputSyntaxError("'->' is not a vertex name", Location(number, col))
                names.setdefault(name, len(names))
            declared = True

        elif keyword == EDGE_KEYWORD:
            if not declared:
                raise InputSyntaxError("edge before the 'vertices:' line", here)
            edges.add(_parse_edge(tokens[1:], names, number, here))

        else:
            raise InputSyntaxError(
                f"expected '{VERTICES_KEYWORD}' or '{EDGE_KEYWORD}', got {keyword!r}", here
            )

    if not declared:
        raise InputSyntaxError("missing 'vertices:' line", Location(1, 1))
    hypergraph = Dihypergraph(tuple(names), frozenset(names.values()), frozenset(edges))
    log.debug(
        "Parsed dihypergraph (vertices=%d, edges=%d)",
        len(hypergraph.vertices),
        len(hypergraph.edges),
    )
    return hypergraph


def _parse_edge(
    tokens: list[tuple[str, int]], names: dict[str, int], number: int, here: Location
) -> Edge:
    arrows = [i for i, (token, _) in enumerate(tokens) if token == ARROW]
    if len(arrows) != 1:
        raise InputSyntaxError("an edge needs exactly one '->'", here)
    split = arrows[0]
    body_tokens, head_tokens = tokens[:split], tokens[split + 1 :]
    arrow_at = Location(number, tokens[split][1])
    if not body_tokens:
        raise EmptyBody("edge has an empty body", arrow_at)
    if len(head_tokens) != 1:
        raise InputSyntaxError("an edge needs exactly one head after '->'", arrow_at)

    def lookup(name: str, column: int) -> int:
        if name not in names:
            raise UnknownVertex(f"undeclared vertex {name!r}", Location(number, column))
        return names[name]

    body = frozenset(lookup(name, col) for name, col in body_tokens)
    head_name, head_column = head_tokens[0]
    head = lookup(head_name, head_column)
    if head in body:
        raise HeadInBody(
            f"head {head_name!r} is part of its own body", Location(number, head_column)
        )
    return Edge(body, head)


def read_document(path: Path) -> str:
    """Read a UTF-8 file; undecodable bytes are reported at their line and column."""
    data = Path(path).read_bytes()
    try:
        return data.decode("UTF-8")
    except UnicodeDecodeError as e:
        before = data[: e.start]
        line = before.count(b"\n") + 1
        column = e.start - before.rfind(b"\n")
        raise InputSyntaxError(f"invalid UTF-8: {e.reason}", Location(line, column)) from e


def read_dihypergraph(path: Path) -> Dihypergraph:
    """Read and parse an instance file."""
    return parse(read_document(path))


def serialize(hypergraph: Dihypergraph) -> str:
    """
    Return the canonical document of `hypergraph`.

    Vertices are listed in index order and edges in canonical order, so
    parse(serialize(H)) == H whenever H spans its whole name table.
    """

    lines = [f"{VERTICES_KEYWORD} " + " ".join(hypergraph.sorted_names(hypergraph.vertices))]
    for edge in hypergraph.edge_list:
        body = " ".join(hypergraph.sorted_names(edge.body))
        lines.append(f"{EDGE_KEYWORD} {body} {ARROW} {hypergraph.name(edge.head)}")
    return "\n".join(lines) + "\n"
