import os
import random

import pytest

from conftest import ids
from hdecomp.core import Dihypergraph, Edge, induced
from hdecomp.decomposition import (Fail, FactorLeaf, Internal, Leaf, Node, build_factor_tree,
                                   build_tree, find_split, is_split, leaf_vertices, leaves,
                                   reconstruct, restrict_htree, tree_stats, validate_factor_tree,
                                   validate_htree, walk)
from hdecomp.errors import InconsistentTree, InvalidTree, NotABipartition, TooFewVertices
from hdecomp.instances import (directed_cycle, edgeless, random_digraph,
                               random_dihypergraph)


def relabel(tree: Node, change) -> Node:
    """Return a copy of a small tree with every interior label passed through `change(path, label)`."""

    def copy(node: Node, path: str) -> Node:
        if not isinstance(node, Internal):
            return node
        return Internal(
            change(path, node.label), copy(node.left, path + "L"), copy(node.right, path + "R")
        )

    return copy(tree, "")


def random_decomposable(rng: random.Random, max_vertices: int = 8) -> tuple[Dihypergraph, Node]:
    while True:
        h = random_dihypergraph(rng, rng.randint(1, max_vertices), rng.randint(0, 6))
        tree = build_tree(h)
        if tree:
            return h, tree


def test_is_split(running_example: Dihypergraph) -> None:
    h = running_example
    assert is_split(h, ids(h, "123"), ids(h, "4567"))
    assert not is_split(h, ids(h, "13"), ids(h, "24567"))
    with pytest.raises(NotABipartition):
        is_split(h, ids(h, "123"), ids(h, "456"))


def test_find_split(running_example: Dihypergraph, triangle: Dihypergraph) -> None:
    assert find_split(running_example) == (
        ids(running_example, "123"),
        ids(running_example, "4567"),
    )
    assert find_split(triangle) is None
    with pytest.raises(TooFewVertices):
        find_split(edgeless(1))


def test_build_tree_running_example(running_example: Dihypergraph) -> None:
    h = running_example
    tree = build_tree(h)
    assert isinstance(tree, Internal)
    assert tree.label == {Edge(ids(h, "56"), 1), Edge(ids(h, "23"), 6)}
    assert leaf_vertices(tree.left) == ids(h, "123")
    assert leaf_vertices(tree.right) == ids(h, "4567")
    assert validate_htree(h, tree)
    assert build_tree(h) == tree


def test_build_tree_fails_on_body_connected_instance(triangle: Dihypergraph) -> None:
    result = build_tree(triangle)
    assert isinstance(result, Fail)
    assert not result
    assert result.reason == "body-connected"
    assert result.vertices == triangle.vertices


def test_factor_tree_of_triangle_is_one_factor(triangle: Dihypergraph) -> None:
    tree = build_factor_tree(triangle)
    assert isinstance(tree, FactorLeaf)
    assert tree.factor == triangle
    assert validate_factor_tree(triangle, tree)


def test_factor_tree_of_decomposable_instance_has_no_factors(
    running_example: Dihypergraph,
) -> None:
    tree = build_factor_tree(running_example)
    assert tree == build_tree(running_example)
    stats = tree_stats(tree)
    assert (stats.leaves, stats.nodes, stats.factors) == (7, 13, 0)


def test_factor_tree_keeps_factor_below_split() -> None:
    h = Dihypergraph.from_indices(
        ["1", "2", "3", "4"], [((0, 1), 2), ((0, 2), 1), ((2,), 3)]
    )
    tree = build_factor_tree(h)
    assert isinstance(tree, Internal)
    assert isinstance(tree.left, FactorLeaf)
    assert tree.left.vertices == {0, 1, 2}
    assert tree.right == Leaf(3)
    assert tree.label == {Edge(frozenset({2}), 3)}
    assert validate_factor_tree(h, tree)
    assert not validate_htree(h, tree)
    assert isinstance(build_tree(h), Fail)


def test_two_tree_path_is_deterministic(two_tree_path: Dihypergraph) -> None:
    trees = [build_tree(two_tree_path) for _ in range(10)]
    assert trees[0]
    assert all(tree == trees[0] for tree in trees)
    assert validate_htree(two_tree_path, trees[0])


def test_easy_cases_decompose() -> None:
    for h in (edgeless(4), directed_cycle(4)):
        tree = build_tree(h)
        assert validate_htree(h, tree)
        assert tree_stats(tree).leaves == 4


def test_digraph_edges_sit_at_least_common_ancestor() -> None:
    rng = random.Random(3)
    for _ in range(50):
        h = random_digraph(rng, rng.randint(2, 9), rng.randint(0, 15))
        tree = build_tree(h)
        leaf_paths = {}
        label_paths = {}
        for path, node in walk(tree):
            if isinstance(node, Leaf):
                leaf_paths[node.vertex] = path
            elif isinstance(node, Internal):
                label_paths.update((edge, path) for edge in node.label)
        for edge in h.edges:
            (tail,) = edge.body
            lca = os.path.commonprefix([leaf_paths[tail], leaf_paths[edge.head]])
            assert label_paths[edge] == lca


def test_validate_reports_misplaced_edge(running_example: Dihypergraph) -> None:
    h = running_example
    moved = Edge(ids(h, "12"), 2)
    tree = relabel(
        build_tree(h), lambda path, label: label | {moved} if path == "" else label - {moved}
    )
    report = validate_htree(h, tree)
    assert not report
    assert (report.condition, report.path) == ("iii", "")


def test_validate_reports_missing_edge(running_example: Dihypergraph) -> None:
    h = running_example
    missing = Edge(ids(h, "3"), 0)
    report = validate_htree(h, relabel(build_tree(h), lambda _, label: label - {missing}))
    assert (report.valid, report.condition) == (False, "iv")


def test_validate_reports_foreign_leaves_and_labels(running_example: Dihypergraph) -> None:
    h = running_example
    assert validate_htree(h, Internal(frozenset(), Leaf(0), Leaf(42))).condition == "i"
    foreign = Edge(frozenset({0}), 1)
    tree = relabel(build_tree(h), lambda path, label: label | {foreign} if path == "" else label)
    assert validate_htree(h, tree).condition == "ii"
    factor = FactorLeaf(induced(h, ids(h, "123")))
    assert validate_htree(h, factor).condition == "i"


def test_validate_rejects_duplicate_leaves() -> None:
    h = edgeless(2)
    report = validate_htree(h, Internal(frozenset(), Leaf(0), Leaf(0)))
    assert (report.condition, report.path) == ("iv", "R")


def test_restrict_htree(running_example: Dihypergraph) -> None:
    h = running_example
    tree = build_tree(h)
    part = ids(h, "123")
    restricted = restrict_htree(h, tree, part)
    assert validate_htree(induced(h, part), restricted)
    labels = [node.label for _, node in walk(restricted) if isinstance(node, Internal)]
    assert frozenset().union(*labels) == {Edge(ids(h, "12"), 2), Edge(ids(h, "3"), 0)}
    assert restrict_htree(h, tree, ids(h, "7")) == Leaf(6)


def test_restrict_htree_rejects_invalid_trees(running_example: Dihypergraph) -> None:
    with pytest.raises(InvalidTree):
        restrict_htree(running_example, Leaf(0), ids(running_example, "1"))


def test_heredity_on_random_instances() -> None:
    rng = random.Random(11)
    for _ in range(200):
        h, tree = random_decomposable(rng)
        for _ in range(5):
            vertices = sorted(h.vertices)
            subset = frozenset(rng.sample(vertices, rng.randint(1, len(vertices))))
            restricted = restrict_htree(h, tree, subset)
            sub = induced(h, subset)
            assert validate_htree(sub, restricted)
            assert build_tree(sub)


def test_reconstruct(running_example: Dihypergraph, triangle: Dihypergraph) -> None:
    assert reconstruct(build_tree(running_example), running_example.names) == running_example
    assert reconstruct(build_factor_tree(triangle), triangle.names) == triangle
    with pytest.raises(InconsistentTree):
        reconstruct(Internal(frozenset(), Leaf(0), Leaf(0)), ["1"])


def test_walk_order(running_example: Dihypergraph) -> None:
    paths = [path for path, _ in walk(build_tree(running_example))]
    assert paths[:3] == ["", "L", "LL"]
    assert len(paths) == 13
    assert [leaf.vertex for leaf in leaves(build_tree(running_example))] == [0, 1, 2, 3, 4, 5, 6]


def test_deep_caterpillar_is_handled_without_recursion() -> None:
    rng = random.Random(5)
    n = 5000
    h = random_digraph(rng, n, 2 * n)
    tree = build_tree(h)
    stats = tree_stats(tree)
    assert stats.leaves == n
    assert stats.depth == n - 1
    assert validate_htree(h, tree)
    assert reconstruct(tree, h.names) == h
    assert restrict_htree(h, tree, range(0, n, 2))


def test_factor_tree_nodes_split_their_vertices_on_random_instances() -> None:
    rng = random.Random(31)
    for _ in range(300):
        h = random_dihypergraph(rng, rng.randint(1, 9), rng.randint(0, 12))
        tree = build_factor_tree(h)
        assert validate_factor_tree(h, tree)
        assert reconstruct(tree, h.names) == h
        for _, node in walk(tree):
            if isinstance(node, Internal):
                left, right = leaf_vertices(node.left), leaf_vertices(node.right)
                assert is_split(induced(h, left | right), left, right)


def test_build_tree_is_valid_or_fails_on_random_instances() -> None:
    rng = random.Random(32)
    for _ in range(300):
        h = random_dihypergraph(rng, rng.randint(1, 9), rng.randint(0, 12))
        tree = build_tree(h)
        if isinstance(tree, Fail):
            assert any(isinstance(node, FactorLeaf) for _, node in walk(build_factor_tree(h)))
        else:
            assert validate_htree(h, tree)
            assert reconstruct(tree, h.names) == h
