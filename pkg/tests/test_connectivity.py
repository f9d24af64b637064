import random

import pytest

from conftest import ids
from hdecomp.connectivity import body_connected_components, body_path, is_body_connected
from hdecomp.core import Dihypergraph, Edge
from hdecomp.errors import UnknownVertex
from hdecomp.instances import directed_cycle, edgeless, random_dihypergraph


def test_components_of_running_example(running_example: Dihypergraph) -> None:
    h = running_example
    assert body_connected_components(h).blocks == (
        ids(h, "123"),
        ids(h, "456"),
        ids(h, "7"),
    )
    assert not is_body_connected(h)


def test_components_ignore_unit_edges() -> None:
    partition = body_connected_components(directed_cycle(4))
    assert [sorted(b) for b in partition] == [[0], [1], [2], [3]]
    assert len(body_connected_components(edgeless(3))) == 3


def test_triangle_is_body_connected(triangle: Dihypergraph) -> None:
    assert is_body_connected(triangle)
    assert body_connected_components(triangle).block_of(2) == {0, 1, 2}


def test_body_path_witness(running_example: Dihypergraph) -> None:
    h = running_example
    path = body_path(h, 3, 5)
    assert path == (
        3,
        Edge(ids(h, "45"), 5),
        4,
        Edge(ids(h, "56"), 1),
        5,
    )
    assert body_path(h, 0, 4) is None
    assert body_path(h, 2, 2) == ()
    with pytest.raises(UnknownVertex):
        body_path(h, 0, 99)


def test_body_path_consecutive_vertices_share_bodies() -> None:
    rng = random.Random(7)
    for _ in range(100):
        h = random_dihypergraph(rng, rng.randint(2, 8), rng.randint(0, 8))
        partition = body_connected_components(h)
        source, target = rng.sample(sorted(h.vertices), 2)
        path = body_path(h, source, target)
        assert (path is not None) == (partition.block_of(source) == partition.block_of(target))
        if path:
            vertices, edges = path[0::2], path[1::2]
            assert vertices[0] == source and vertices[-1] == target
            assert len(set(vertices)) == len(vertices)
            assert len(set(edges)) == len(edges)
            for a, edge, b in zip(vertices, edges, vertices[1:]):
                assert {a, b} <= edge.body


def test_components_respect_every_body_on_random_instances() -> None:
    rng = random.Random(21)
    for _ in range(300):
        h = random_dihypergraph(rng, rng.randint(1, 10), rng.randint(0, 10))
        partition = body_connected_components(h)
        assert frozenset().union(*partition) == h.vertices
        assert sum(map(len, partition)) == len(h.vertices)
        for block in partition:
            for edge in h.edges:
                if not edge.is_unit:
                    assert edge.body <= block or not edge.body & block


def test_unit_edges_never_change_components_on_random_instances() -> None:
    rng = random.Random(22)
    for _ in range(300):
        h = random_dihypergraph(rng, rng.randint(1, 10), rng.randint(0, 10))
        stripped = Dihypergraph(
            h.names, h.vertices, frozenset(e for e in h.edges if not e.is_unit)
        )
        assert body_connected_components(stripped) == body_connected_components(h)
