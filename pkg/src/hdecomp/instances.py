"""
This module contains named dihypergraph instances and random instance generators.

Vertices of generated instances are named "1", "2", ... in index order.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator

from .core import Dihypergraph, new_dihypergraph
from .errors import TooFewVertices


def _numbered(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(1, n + 1))


def _from_edges(n: int, notation: str) -> Dihypergraph:
    """Build from compact edge notation like "12>3 3>1" (single-digit vertex names)."""
    edges = []
    for token in notation.split():
        body, head = token.split(">")
        edges.append((list(body), head))
    return new_dihypergraph(_numbered(n), edges)


def running_example() -> Dihypergraph:
    """Seven vertices; split {1,2,3} / {4,5,6,7} with crossing edges (56,2) and (23,7)."""
    return _from_edges(7, "12>3 3>1 56>2 23>7 45>6 5>7")


def body_connected_triangle() -> Dihypergraph:
    """Smallest H-indecomposable instance with two edges."""
    return _from_edges(3, "12>3 13>2")


def two_tree_path() -> Dihypergraph:
    """Eight vertices admitting two different H-trees."""
    return _from_edges(8, "12>3 23>4 34>5 56>7 67>8")


def lattice_example() -> Dihypergraph:
    """Closure system that is a meet-sublattice but not a sublattice of its factor product."""
    return _from_edges(3, "2>1 13>2")


def edgeless(n: int = 4) -> Dihypergraph:
    """n isolated vertices; every full binary tree over them is an H-tree."""
    return new_dihypergraph(_numbered(n), [])


def directed_cycle(n: int = 4) -> Dihypergraph:
    """Directed cycle 1 -> 2 -> ... -> n -> 1."""
    names = _numbered(n)
    return new_dihypergraph(names, [([names[i]], names[(i + 1) % n]) for i in range(n)])


FIXTURES: dict[str, Callable[[], Dihypergraph]] = {
    "running-example": running_example,
    "triangle": body_connected_triangle,
    "two-tree-path": two_tree_path,
    "lattice-example": lattice_example,
    "edgeless": edgeless,
    "directed-cycle": directed_cycle,
}


def exponential_gap_family(k: int) -> Dihypergraph:
    """
    Two edgeless sides U1 = {1..k} and U2 = {k+1..2k} with complete cross bodies.

    Every pair of one side implies every vertex of the other side. F_H then has
    k^2 + 2k + 2 closed sets while both sides are free (2^k closed sets each).
    """

    if k < 2:
        raise TooFewVertices("the exponential-gap family needs k >= 2")
    names = _numbered(2 * k)
    left, right = names[:k], names[k:]
    edges = []
    for side, other in ((left, right), (right, left)):
        for pair in itertools.combinations(side, 2):
            edges.extend((pair, head) for head in other)
    return new_dihypergraph(names, edges)


def _random_edge(rng: random.Random, vertices: list[int], max_body: int) -> tuple[list[int], int]:
    head = rng.choice(vertices)
    others = [v for v in vertices if v != head]
    body = rng.sample(others, rng.randint(1, min(max_body, len(others))))
    return body, head


def random_dihypergraph(
    rng: random.Random, num_vertices: int, num_edges: int, max_body: int = 3
) -> Dihypergraph:
    """Random instance with up to `num_edges` distinct edges and bodies of at most `max_body` vertices."""
    vertices = list(range(num_vertices))
    edges = []
    if num_vertices > 1:
        edges = [_random_edge(rng, vertices, max_body) for _ in range(num_edges)]
    return Dihypergraph.from_indices(_numbered(num_vertices), edges)


def random_digraph(rng: random.Random, num_vertices: int, num_edges: int) -> Dihypergraph:
    """Random digraph (unit edges only) with up to `num_edges` distinct edges."""
    edges = []
    for _ in range(num_edges):
        tail, head = rng.sample(range(num_vertices), 2)
        edges.append(((tail,), head))
    return Dihypergraph.from_indices(_numbered(num_vertices), edges)


def random_split_instance(
    rng: random.Random,
    left: int,
    right: int,
    inner_edges: int,
    crossing_edges: int,
    crossing_side: str = "both",
    max_body: int = 3,
) -> tuple[Dihypergraph, frozenset[int], frozenset[int]]:
    """
    Random instance with a known split (U1, U2) = ({0..left-1}, {left..}).

    Crossing edges take their body from U1 ("left"), from U2 ("right") or from
    either side ("both"), and their head from the other side.
    """

    part1 = list(range(left))
    part2 = list(range(left, left + right))
    edges = []
    for side in (part1, part2):
        if len(side) > 1:
            edges.extend(_random_edge(rng, side, max_body) for _ in range(inner_edges))
    for _ in range(crossing_edges):
        body_side = {"left": part1, "right": part2}.get(crossing_side) or rng.choice(
            (part1, part2)
        )
        head_side = part2 if body_side is part1 else part1
        body = rng.sample(body_side, rng.randint(1, min(max_body, len(body_side))))
        edges.append((body, rng.choice(head_side)))
    hypergraph = Dihypergraph.from_indices(_numbered(left + right), edges)
    return hypergraph, frozenset(part1), frozenset(part2)


def all_dihypergraphs(
    num_vertices: int, max_edges: int, max_body: int
) -> Iterator[Dihypergraph]:
    """Every dihypergraph on `num_vertices` vertices with at most `max_edges` edges."""
    vertices = range(num_vertices)
    candidates = [
        (body, head)
        for head in vertices
        for size in range(1, max_body + 1)
        for body in itertools.combinations([v for v in vertices if v != head], size)
    ]
    names = _numbered(num_vertices)
    for count in range(max_edges + 1):
        for edges in itertools.combinations(candidates, count):
            yield Dihypergraph.from_indices(names, edges)
