"""This module contains body-connectivity: body-connected components and body-paths."""

from __future__ import annotations

import logging as log
from collections.abc import Iterator
from dataclasses import dataclass

import networkx as nx
from networkx.utils import UnionFind

from .core import Dihypergraph, Edge


@dataclass(frozen=True)
class Partition:
    """Disjoint vertex blocks covering a ground set, ordered by smallest vertex."""

    blocks: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.blocks)

    def block_of(self, vertex: int) -> frozenset[int]:
        """Return the block containing `vertex`."""
        for block in self.blocks:
            if vertex in block:
                return block
        raise KeyError(vertex)


def body_connected_components(hypergraph: Dihypergraph) -> Partition:
    """
    Compute the body-connected components of a dihypergraph.

    All body vertices of an edge with |B| >= 2 are merged; heads and unit
    bodies never merge anything.
    """

    forest = UnionFind(hypergraph.vertices)
    for edge in hypergraph.edges:
        if not edge.is_unit:
            forest.union(*edge.body)
    partition = Partition(tuple(sorted(map(frozenset, forest.to_sets()), key=min)))
    log.debug(
        "Computed %d body-connected component(s) of %d vertices",
        len(partition),
        len(hypergraph.vertices),
    )
    return partition


def is_body_connected(hypergraph: Dihypergraph) -> bool:
    """Return whether every pair of vertices is body-connected."""
    return len(body_connected_components(hypergraph)) == 1


def body_path(
    hypergraph: Dihypergraph, source: int, target: int
) -> tuple[int | Edge, ...] | None:
    """
    Return a body-path v1, e1, v2, ..., ek, vk+1 from `source` to `target`.

    The witness is a shortest path in the vertex/edge incidence graph (body
    memberships of non-unit edges only), so its vertices and edges are
    distinct. Returns () if source == target and None if they are not
    body-connected.
    """

    hypergraph.require((source, target))
    if source == target:
        return ()

    graph = nx.Graph()
    graph.add_nodes_from(("v", v) for v in sorted(hypergraph.vertices))
    for k, edge in enumerate(hypergraph.edge_list):
        if not edge.is_unit:
            graph.add_edges_from((("e", k), ("v", v)) for v in sorted(edge.body))

    try:
        path = nx.shortest_path(graph, ("v", source), ("v", target))
    except nx.NetworkXNoPath:
        return None
    return tuple(
        index if kind == "v" else hypergraph.edge_list[index] for kind, index in path
    )
