import random

import pytest

from conftest import ids
from hdecomp.core import (Dihypergraph, Edge, bipartite_part, check_bipartition,
                          induced, new_dihypergraph, size)
from hdecomp.errors import (EmptyBody, EmptyVertexSet, HeadInBody, NotABipartition,
                            UnknownVertex)
from hdecomp.instances import random_dihypergraph


def test_new_dihypergraph_builds_running_example(running_example: Dihypergraph) -> None:
    assert len(running_example.vertices) == 7
    assert len(running_example.edges) == 6
    assert running_example.names == ("1", "2", "3", "4", "5", "6", "7")
    assert str(running_example) == (
        "({1,2,3,4,5,6,7}, {(1 2 -> 3), (2 3 -> 7), (3 -> 1), (4 5 -> 6), (5 -> 7), (5 6 -> 2)})"
    )


def test_new_dihypergraph_collapses_duplicates() -> None:
    hypergraph = new_dihypergraph(["a", "b", "a"], [(["a"], "b"), (["a"], "b")])
    assert hypergraph.names == ("a", "b")
    assert len(hypergraph.edges) == 1


def test_new_dihypergraph_rejects_invalid_input() -> None:
    with pytest.raises(EmptyVertexSet):
        new_dihypergraph([], [])
    with pytest.raises(HeadInBody):
        new_dihypergraph(["1", "2"], [(["1", "2"], "1")])
    with pytest.raises(EmptyBody):
        new_dihypergraph(["1", "2"], [([], "1")])
    with pytest.raises(UnknownVertex):
        new_dihypergraph(["1", "2"], [(["1"], "9")])


def test_edge_invariants() -> None:
    with pytest.raises(EmptyBody):
        Edge(frozenset(), 0)
    with pytest.raises(HeadInBody):
        Edge(frozenset({0, 1}), 1)
    edge = Edge(frozenset({0, 1}), 2)
    assert edge.vertices == {0, 1, 2}
    assert not edge.is_unit
    assert Edge(frozenset({3}), 2).is_unit


def test_dihypergraph_rejects_edges_outside_ground_set() -> None:
    with pytest.raises(UnknownVertex):
        Dihypergraph.from_indices(["1", "2", "3"], [((0,), 2)], vertices=[0, 1])


def test_size(running_example: Dihypergraph) -> None:
    assert size(running_example) == 18
    assert size(new_dihypergraph(["x"], [])) == 2


def test_induced(running_example: Dihypergraph) -> None:
    left = induced(running_example, ids(running_example, "123"))
    right = induced(running_example, ids(running_example, "4567"))
    fmt = running_example.format_edge
    assert sorted(fmt(e) for e in left.edges) == ["(1 2 -> 3)", "(3 -> 1)"]
    assert sorted(fmt(e) for e in right.edges) == ["(4 5 -> 6)", "(5 -> 7)"]
    assert right.vertices == ids(running_example, "4567")
    assert right.names == running_example.names
    assert induced(running_example, running_example.vertices) is running_example
    with pytest.raises(EmptyVertexSet):
        induced(running_example, [])
    with pytest.raises(UnknownVertex):
        induced(running_example, [42])


def test_bipartite_part(running_example: Dihypergraph) -> None:
    crossing = bipartite_part(
        running_example, ids(running_example, "123"), ids(running_example, "4567")
    )
    fmt = running_example.format_edge
    assert sorted(fmt(e) for e in crossing) == ["(2 3 -> 7)", "(5 6 -> 2)"]


def test_check_bipartition_rejects_non_partitions(running_example: Dihypergraph) -> None:
    h = running_example
    with pytest.raises(NotABipartition):
        check_bipartition(h, ids(h, "1234567"), frozenset())
    with pytest.raises(NotABipartition):
        check_bipartition(h, ids(h, "123"), ids(h, "34567"))
    with pytest.raises(NotABipartition):
        check_bipartition(h, ids(h, "123"), ids(h, "456"))


def test_name_conversion(running_example: Dihypergraph) -> None:
    assert running_example.ids(["3", "1"]) == {0, 2}
    assert running_example.name(6) == "7"
    assert running_example.format_set({2, 0}) == "{1,3}"
    with pytest.raises(UnknownVertex):
        running_example.ids(["8"])


def _random_subset(rng: random.Random, vertices: frozenset[int]) -> frozenset[int]:
    return frozenset(rng.sample(sorted(vertices), rng.randint(1, len(vertices))))


def test_edges_split_along_random_bipartitions() -> None:
    rng = random.Random(11)
    for _ in range(300):
        h = random_dihypergraph(rng, rng.randint(2, 8), rng.randint(0, 12))
        order = sorted(h.vertices)
        rng.shuffle(order)
        cut = rng.randint(1, len(order) - 1)
        u1, u2 = frozenset(order[:cut]), frozenset(order[cut:])
        e1, e2 = induced(h, u1).edges, induced(h, u2).edges
        e12 = bipartite_part(h, u1, u2)
        assert not e1 & e2 and not e1 & e12 and not e2 & e12
        assert e1 | e2 | e12 == h.edges


def test_induced_is_transitive_on_random_instances() -> None:
    rng = random.Random(12)
    for _ in range(300):
        h = random_dihypergraph(rng, rng.randint(1, 8), rng.randint(0, 12))
        a = _random_subset(rng, h.vertices)
        b = _random_subset(rng, a)
        assert induced(induced(h, a), b) == induced(h, b)


def test_size_lower_bound_on_random_instances() -> None:
    rng = random.Random(13)
    for _ in range(300):
        h = random_dihypergraph(rng, rng.randint(1, 8), rng.randint(0, 6))
        assert size(h) >= len(h.vertices) + 1
        assert (size(h) == len(h.vertices) + 1) == (not h.edges)
