"""This module contains the 'Edge' and 'Dihypergraph' classes and the basic operations on them."""

from __future__ import annotations

import logging as log
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (EmptyBody, EmptyVertexSet, HeadInBody, NotABipartition,
                     UnknownVertex)


@dataclass(frozen=True, slots=True)
class Edge:
    """
    Class representing an edge (B, h) of a dihypergraph.

    Vertices are dense integer indices into the name table of the dihypergraph
    the edge belongs to. The body is nonempty and does not contain the head.
    """

    body: frozenset[int]
    head: int

    def __post_init__(self):
        """Reject empty bodies and heads inside their own body."""
        if not self.body:
            raise EmptyBody(f"edge with head {self.head} has an empty body")
        if self.head in self.body:
            raise HeadInBody(f"head {self.head} is part of its own body")

    @property
    def vertices(self) -> frozenset[int]:
        """Return the edge read as the set B ∪ {h}."""
        return self.body | {self.head}

    @property
    def is_unit(self) -> bool:
        """Unit edges have a single-vertex body."""
        return len(self.body) == 1

    def within(self, vertices: frozenset[int] | set[int]) -> bool:
        """Return whether the edge is contained in `vertices`."""
        return self.head in vertices and self.body <= vertices

    def sort_key(self) -> tuple[tuple[int, ...], int]:
        """Canonical order: sorted body indices first, head second."""
        return tuple(sorted(self.body)), self.head


@dataclass(frozen=True)
class Dihypergraph:
    """
    Class representing a dihypergraph (B-graph) H = (U, E).

    `names` is the name table shared by all subhypergraphs derived from the
    same instance; `vertices` is a nonempty subset of its indices. Instances
    are immutable and validated on construction.
    """

    names: tuple[str, ...]
    vertices: frozenset[int]
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        """Validate vertex indices and edge containment."""
        if not self.vertices:
            raise EmptyVertexSet("a dihypergraph needs at least one vertex")
        if min(self.vertices) < 0 or max(self.vertices) >= len(self.names):
            raise UnknownVertex("vertex index outside of the name table")
        for edge in self.edges:
            if not edge.within(self.vertices):
                missing = sorted(edge.vertices - self.vertices)
                raise UnknownVertex(
                    f"edge {self.format_edge(edge)} references vertices "
                    f"{missing} outside the ground set"
                )

    @classmethod
    def from_indices(
        cls,
        names: Iterable[str],
        edges: Iterable[tuple[Iterable[int], int]],
        vertices: Iterable[int] | None = None,
    ) -> "Dihypergraph":
        """Create instance from a name table and (body indices, head index) pairs."""
        names = tuple(names)
        vertices = frozenset(range(len(names)) if vertices is None else vertices)
        return cls(
            names=names,
            vertices=vertices,
            edges=frozenset(Edge(frozenset(body), head) for body, head in edges),
        )

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        """Edges in canonical order."""
        return tuple(sorted(self.edges, key=Edge.sort_key))

    def name(self, vertex: int) -> str:
        """Return the name of a vertex index."""
        return self.names[vertex]

    def ids(self, names: Iterable[str]) -> frozenset[int]:
        """Convert vertex names to an index set of vertices of this dihypergraph."""
        result = set()
        for name in names:
            index = self._index.get(name)
            if index is None or index not in self.vertices:
                raise UnknownVertex(f"unknown vertex {name!r}")
            result.add(index)
        return frozenset(result)

    def require(self, vertices: Iterable[int]) -> frozenset[int]:
        """Return `vertices` as a frozenset; raise UnknownVertex if not a subset of U."""
        vertices = frozenset(vertices)
        if not vertices <= self.vertices:
            unknown = sorted(vertices - self.vertices)
            raise UnknownVertex(f"vertices {unknown} are not part of the dihypergraph")
        return vertices

    def sorted_names(self, vertices: Iterable[int]) -> list[str]:
        """Return the names of `vertices` in index order."""
        return [self.names[v] for v in sorted(vertices)]

    def format_set(self, vertices: Iterable[int]) -> str:
        """Format a vertex set as '{a,b,c}'."""
        return "{" + ",".join(self.sorted_names(vertices)) + "}"

    def format_edge(self, edge: Edge) -> str:
        """Format an edge as '(a b -> c)'."""
        body = " ".join(self.sorted_names(edge.body))
        return f"({body} -> {self.names[edge.head]})"

    def __str__(self):
        edges = ", ".join(self.format_edge(e) for e in self.edge_list)
        return f"({self.format_set(self.vertices)}, {{{edges}}})"


def new_dihypergraph(
    vertex_names: Iterable[str], edge_specs: Iterable[tuple[Iterable[str], str]]
) -> Dihypergraph:
    """
    Create a validated dihypergraph from vertex names and (body names, head name) pairs.

    Duplicate vertex names and duplicate edges collapse; vertices are interned
    in order of first appearance.
    """

    names = tuple(dict.fromkeys(str(n) for n in vertex_names))
    if not names:
        raise EmptyVertexSet("no vertices declared")
    index = {name: i for i, name in enumerate(names)}

    def lookup(name) -> int:
        try:
            return index[str(name)]
        except KeyError:
            raise UnknownVertex(f"edge references undeclared vertex {name!r}") from None

    edges = set()
    for body, head in edge_specs:
        body_ids = frozenset(lookup(b) for b in body)
        if not body_ids:
            raise EmptyBody(f"edge with head {head!r} has an empty body")
        head_id = lookup(head)
        if head_id in body_ids:
            raise HeadInBody(f"head {head!r} is part of its own body")
        edges.add(Edge(body_ids, head_id))

    hypergraph = Dihypergraph(names, frozenset(range(len(names))), frozenset(edges))
    log.debug(
        "Created dihypergraph (vertices=%d, edges=%d)", len(names), len(edges)
    )
    return hypergraph


def size(hypergraph: Dihypergraph) -> int:
    """Return |U| + Σ|B(e)| + 1."""
    return (
        len(hypergraph.vertices) + sum(len(e.body) for e in hypergraph.edges) + 1
    )


def induced(hypergraph: Dihypergraph, vertices: Iterable[int]) -> Dihypergraph:
    """Return the subhypergraph induced by `vertices` (all edges contained in it)."""
    vertices = hypergraph.require(vertices)
    if not vertices:
        raise EmptyVertexSet("cannot induce on an empty vertex set")
    if vertices == hypergraph.vertices:
        return hypergraph
    edges = frozenset(e for e in hypergraph.edges if e.within(vertices))
    return Dihypergraph(hypergraph.names, vertices, edges)


def check_bipartition(
    hypergraph: Dihypergraph, part1: Iterable[int], part2: Iterable[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """Return both parts as frozensets; raise NotABipartition unless they form one."""
    part1, part2 = frozenset(part1), frozenset(part2)
    if not part1 or not part2:
        raise NotABipartition("both parts of a bipartition must be nonempty")
    if part1 & part2:
        raise NotABipartition(
            f"parts overlap in {hypergraph.format_set(part1 & part2)}"
        )
    if part1 | part2 != hypergraph.vertices:
        raise NotABipartition("parts do not cover exactly the ground set")
    return part1, part2


def bipartite_part(
    hypergraph: Dihypergraph, part1: Iterable[int], part2: Iterable[int]
) -> frozenset[Edge]:
    """Return the edges contained in neither part of the bipartition (E12)."""
    part1, part2 = check_bipartition(hypergraph, part1, part2)
    return frozenset(
        e for e in hypergraph.edges if not e.within(part1) and not e.within(part2)
    )
