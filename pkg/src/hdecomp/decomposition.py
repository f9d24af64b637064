"""
This module contains the hierarchical decomposition of dihypergraphs.

Splits, H-trees and their construction (including the relaxed construction
into H-factors), validation against the four labelling conditions,
restriction to induced subhypergraphs and reconstruction.

All tree algorithms are iterative: digraphs decompose into caterpillars whose
depth equals the number of vertices.
"""

from __future__ import annotations

import heapq
import logging as log
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from networkx.utils import UnionFind

from .connectivity import body_connected_components, is_body_connected
from .core import Dihypergraph, Edge, check_bipartition, induced
from .decorators import timing
from .errors import (DihypergraphError, EmptyVertexSet, InconsistentTree,
                     InvalidTree, TooFewVertices)


@dataclass(frozen=True, slots=True)
class Leaf:
    """Leaf labelled by a single vertex."""

    vertex: int


@dataclass(frozen=True)
class FactorLeaf:
    """Leaf carrying a body-connected subhypergraph with at least two vertices."""

    factor: Dihypergraph

    @property
    def vertices(self) -> frozenset[int]:
        return self.factor.vertices


@dataclass(frozen=True, slots=True)
class Internal:
    """Interior node labelled by a (possibly empty) set of edges."""

    label: frozenset[Edge]
    left: "Node"
    right: "Node"


Node = Leaf | FactorLeaf | Internal
HTree = Leaf | Internal
FactorTree = Node


@dataclass(frozen=True)
class Fail:
    """Result of `build_tree` on an H-indecomposable dihypergraph."""

    reason: str
    vertices: frozenset[int]

    def __bool__(self):
        return False


def is_split(
    hypergraph: Dihypergraph, part1: Iterable[int], part2: Iterable[int]
) -> bool:
    """Return whether the bipartition (part1, part2) keeps every body on one side."""
    part1, part2 = check_bipartition(hypergraph, part1, part2)
    return all(e.body <= part1 or e.body <= part2 for e in hypergraph.edges)


def find_split(
    hypergraph: Dihypergraph,
) -> tuple[frozenset[int], frozenset[int]] | None:
    """
    Return the canonical split (C, U \\ C), or None if H is body-connected.

    C is the body-connected component containing the smallest vertex index.
    """

    if len(hypergraph.vertices) < 2:
        raise TooFewVertices("a split needs at least two vertices")
    partition = body_connected_components(hypergraph)
    if len(partition) == 1:
        return None
    component = partition.blocks[0]
    return component, hypergraph.vertices - component


class _Blocks:
    """
    Body-connected components of a pending subproblem, popped by smallest vertex.

    Blocks are keyed by their smallest vertex. The initial blocks are consumed
    in sorted order and recomputed blocks go through a heap; keys that no
    longer map to a block are stale and skipped.
    """

    def __init__(self, groups: list[tuple[int, ...]]):
        self.members = {group[0]: group for group in groups}
        self.initial = [group[0] for group in groups]
        self.position = 0
        self.heap: list[int] = []

    def __len__(self):
        return len(self.members)

    def add(self, group: tuple[int, ...]):
        self.members[group[0]] = group
        heapq.heappush(self.heap, group[0])

    def discard(self, key: int) -> tuple[int, ...]:
        return self.members.pop(key)

    def pop_min(self) -> tuple[int, ...]:
        members, initial, heap = self.members, self.initial, self.heap
        while True:
            if self.position < len(initial) and not (heap and heap[0] < initial[self.position]):
                key = initial[self.position]
                self.position += 1
            else:
                key = heapq.heappop(heap)
            group = members.pop(key, None)
            if group is not None:
                return group


_DETACHED = -1


@dataclass
class _Task:
    """
    Pending subproblem H[W] whose vertices are owned by `tag`.

    Peeling records the right spine of its subtree from the top down: one
    label and left subtree per split, then the body-connected `tail`.
    """

    tag: int
    vertices: tuple[int, ...]
    labels: list[frozenset[Edge]] = field(default_factory=list)
    lefts: list[Node | _Task] = field(default_factory=list)
    tail: Node | Fail | None = None
    tree: Node | None = None


@dataclass
class _TreeBuilder:
    """
    Iterative BuildTree.

    Each vertex is owned by at most one pending subproblem (`owner` holds its
    tag), so membership of an edge in the current induced subhypergraph is
    decided by looking at the owners of its vertices. A subproblem W is peeled
    along its right spine: the canonical component C is split off and W \\ C
    keeps its tag and its blocks, except for blocks containing the body of a
    crossing edge whose head lies in C, which are recomputed. Single vertices
    become leaves at once; larger components become subproblems of their own.
    """

    hypergraph: Dihypergraph
    factors: bool
    edges: tuple[Edge, ...] = field(init=False)
    members: list[tuple[int, ...]] = field(init=False)
    incidence: list[list[int]] = field(init=False)
    linked: dict[int, list[int]] = field(init=False)
    owner: list[int] = field(init=False)
    block_of: list[int] = field(init=False)
    next_tag: int = 1

    def __post_init__(self):
        n = len(self.hypergraph.names)
        edges = self.edges = tuple(self.hypergraph.edges)
        # body vertices first, head last
        members = self.members = [(*e.body, e.head) for e in edges]
        incidence = self.incidence = [[] for _ in range(n)]
        # non-unit edges, listed under the first vertex of their body
        linked = self.linked = {}
        for k, vertices in enumerate(members):
            for v in vertices:
                incidence[v].append(k)
            if len(vertices) > 2:
                linked.setdefault(vertices[0], []).append(k)
        if len(self.hypergraph.vertices) == n:
            self.owner = [0] * n
        else:
            self.owner = [_DETACHED] * n
            for v in self.hypergraph.vertices:
                self.owner[v] = 0
        self.block_of = list(range(n))

    def edges_within(self, tag: int, vertices: Iterable[int]) -> set[int]:
        """Return indices of edges incident to `vertices` whose vertices are all tagged `tag`."""
        owner, members = self.owner, self.members
        found = set()
        for v in vertices:
            for k in self.incidence[v]:
                if k in found:
                    continue
                for u in members[k]:
                    if owner[u] != tag:
                        break
                else:
                    found.add(k)
        return found

    def components(self, tag: int, vertices: tuple[int, ...]) -> list[tuple[int, ...]]:
        """Body-connected components of `vertices` under the edges tagged `tag`, as sorted tuples."""
        owner, members, linked = self.owner, self.members, self.linked
        forest = None
        if linked:
            for v in vertices:
                for k in linked.get(v, ()):
                    for u in members[k]:
                        if owner[u] != tag:
                            break
                    else:
                        if forest is None:
                            forest = UnionFind(vertices)
                        forest.union(*members[k][:-1])
        if forest is None:
            return [(v,) for v in sorted(vertices)]
        return sorted(tuple(sorted(group)) for group in forest.to_sets())

    def register(self, groups: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
        block_of = self.block_of
        for group in groups:
            for u in group:
                block_of[u] = group[0]
        return groups

    def peel(self, task: _Task) -> list[_Task]:
        """Split components off `task` until one block is left; return the new subproblems."""
        owner, members, incidence = self.owner, self.members, self.incidence
        edges, block_of = self.edges, self.block_of
        tag = task.tag
        blocks = _Blocks(self.register(self.components(tag, task.vertices)))
        subtasks = []
        while len(blocks) > 1:
            component = blocks.pop_min()
            affected = set()
            label = []
            if len(component) == 1:
                v = component[0]
                for k in incidence[v]:
                    vertices = members[k]
                    for u in vertices:
                        if owner[u] != tag:
                            break
                    else:
                        label.append(k)
                        if len(vertices) > 2 and vertices[-1] == v:
                            affected.add(block_of[vertices[0]])
                owner[v] = _DETACHED
                left = Leaf(v)
            else:
                touching = self.edges_within(tag, component)
                left = _Task(self.next_tag, component)
                self.next_tag += 1
                for u in component:
                    owner[u] = left.tag
                for k in touching:
                    vertices = members[k]
                    if owner[vertices[-1]] != left.tag:
                        label.append(k)
                    elif owner[vertices[0]] != left.tag:
                        label.append(k)
                        if len(vertices) > 2:
                            affected.add(block_of[vertices[0]])
                subtasks.append(left)

            for key in affected:
                for group in self.register(self.components(tag, blocks.discard(key))):
                    blocks.add(group)
            task.labels.append(frozenset([edges[k] for k in label]))
            task.lefts.append(left)

        task.tail = self.tail(tag, blocks.pop_min())
        return subtasks

    def tail(self, tag: int, vertices: tuple[int, ...]) -> Node | Fail:
        if len(vertices) == 1:
            return Leaf(vertices[0])
        if not self.factors:
            return Fail("body-connected", frozenset(vertices))
        edges = self.edges_within(tag, vertices)
        return FactorLeaf(
            Dihypergraph(
                self.hypergraph.names,
                frozenset(vertices),
                frozenset(self.edges[k] for k in edges),
            )
        )

    def build(self) -> Node | Fail:
        root = _Task(0, tuple(sorted(self.hypergraph.vertices)))
        # a failing tail is reported once the left subtrees above it are done,
        # so the first failure in pre-order wins
        stack: list[_Task | Fail] = [root]
        order: list[_Task] = []
        while stack:
            item = stack.pop()
            if isinstance(item, Fail):
                log.debug(
                    "BuildTree stopped: %d vertices are body-connected", len(item.vertices)
                )
                return item
            order.append(item)
            subtasks = self.peel(item)
            if isinstance(item.tail, Fail):
                stack.append(item.tail)
            stack.extend(reversed(subtasks))

        for task in reversed(order):
            node = task.tail
            for label, left in zip(reversed(task.labels), reversed(task.lefts)):
                if isinstance(left, _Task):
                    left = left.tree
                node = Internal(label, left, node)
            task.tree = node
        return root.tree


@timing
def build_tree(hypergraph: Dihypergraph) -> HTree | Fail:
    """
    Compute an H-tree, or return Fail if H is H-indecomposable.

    The left child of every interior node holds the body-connected component
    containing the smallest vertex; its label holds the crossing edges.
    """

    result = _TreeBuilder(hypergraph, factors=False).build()
    if isinstance(result, Fail):
        log.info("Dihypergraph is H-indecomposable (%s)", result.reason)
    else:
        log.debug("Built H-tree for %d vertices", len(hypergraph.vertices))
    return result


@timing
def build_factor_tree(hypergraph: Dihypergraph) -> FactorTree:
    """Compute the decomposition into H-factors; body-connected parts become factor leaves."""
    tree = _TreeBuilder(hypergraph, factors=True).build()
    log.debug(
        "Built factor tree with %d factor leaves",
        sum(isinstance(leaf, FactorLeaf) for leaf in leaves(tree)),
    )
    return tree


def _preorder(tree: Node) -> Iterator[tuple[int, Node]]:
    """Yield (depth, node) pairs, parents before children and left before right."""
    stack = [(0, tree)]
    while stack:
        depth, node = stack.pop()
        yield depth, node
        if isinstance(node, Internal):
            stack.append((depth + 1, node.right))
            stack.append((depth + 1, node.left))


def walk(tree: Node) -> Iterator[tuple[str, Node]]:
    """
    Yield (path, node) pairs, parents before children and left before right.

    Paths are L/R steps from the root (""). Their total length grows with the
    square of the depth, so bulk traversals use `_preorder` instead.
    """

    stack = [("", tree)]
    while stack:
        path, node = stack.pop()
        yield path, node
        if isinstance(node, Internal):
            stack.append((path + "R", node.right))
            stack.append((path + "L", node.left))


def leaves(tree: Node) -> list[Leaf | FactorLeaf]:
    """Return the leaves from left to right."""
    return [node for _, node in _preorder(tree) if not isinstance(node, Internal)]


def leaf_vertices(tree: Node) -> frozenset[int]:
    """Return the union of the leaf ground sets below `tree`."""
    result = set()
    for leaf in leaves(tree):
        if isinstance(leaf, Leaf):
            result.add(leaf.vertex)
        else:
            result |= leaf.vertices
    return frozenset(result)


@dataclass(frozen=True)
class TreeStats:
    """Shape statistics of a tree."""

    nodes: int
    leaves: int
    factors: int
    depth: int


def tree_stats(tree: Node) -> TreeStats:
    """Count nodes, leaves and factor leaves and measure the depth."""
    nodes = num_leaves = factors = depth = 0
    for level, node in _preorder(tree):
        nodes += 1
        depth = max(depth, level)
        if not isinstance(node, Internal):
            num_leaves += 1
            factors += isinstance(node, FactorLeaf)
    return TreeStats(nodes=nodes, leaves=num_leaves, factors=factors, depth=depth)


@dataclass(frozen=True)
class _Layout:
    """Pre-order array view of a tree with child indices and leaf spans."""

    nodes: list[Node]
    parent: list[int]
    right: list[int]
    span: list[tuple[int, int]]

    @classmethod
    def of(cls, tree: Node) -> "_Layout":
        nodes = [node for _, node in _preorder(tree)]

        n = len(nodes)
        size = [1] * n
        right = [-1] * n
        parent = [-1] * n
        for i in range(n - 1, -1, -1):
            if isinstance(nodes[i], Internal):
                right[i] = i + 1 + size[i + 1]
                size[i] = 1 + size[i + 1] + size[right[i]]
                parent[i + 1] = parent[right[i]] = i

        # leaves appear left to right in pre-order, so every subtree covers a
        # contiguous range of leaf positions
        span = [(0, 0)] * n
        position = 0
        for i, node in enumerate(nodes):
            if not isinstance(node, Internal):
                span[i] = (position, position + 1)
                position += 1
        for i in range(n - 1, -1, -1):
            if isinstance(nodes[i], Internal):
                span[i] = (span[i + 1][0], span[right[i]][1])
        return cls(nodes=nodes, parent=parent, right=right, span=span)

    def path(self, index: int) -> str:
        """Return the L/R path from the root to the node at `index`."""
        steps = []
        while index > 0:
            up = self.parent[index]
            steps.append("L" if index == up + 1 else "R")
            index = up
        return "".join(reversed(steps))


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of tree validation.

    `condition` names the first violated condition ("i" to "iv", or "factor"
    for a factor leaf that is not body-connected) and `path` the witnessing
    node ("" is the root, then L/R steps).
    """

    valid: bool
    condition: str | None = None
    path: str | None = None
    message: str = "valid"

    def __bool__(self):
        return self.valid


def _violation(condition: str, path: str, message: str) -> ValidationReport:
    log.debug("Tree violates condition (%s) at node %r: %s", condition, path, message)
    return ValidationReport(False, condition, path, message)


def _validate(hypergraph: Dihypergraph, tree: Node, factors: bool) -> ValidationReport:
    layout = _Layout.of(tree)
    fmt = hypergraph.format_edge

    # (i) leaves are vertices (or body-connected subhypergraphs of H)
    position: dict[int, int] = {}
    for i, node in enumerate(layout.nodes):
        if isinstance(node, Leaf):
            if node.vertex not in hypergraph.vertices:
                return _violation("i", layout.path(i), f"leaf {node.vertex} is not a vertex")
            position.setdefault(node.vertex, layout.span[i][0])
        elif isinstance(node, FactorLeaf):
            if not factors:
                return _violation("i", layout.path(i), "leaf carries a factor, not a vertex")
            if not node.vertices <= hypergraph.vertices:
                return _violation("i", layout.path(i), "factor has vertices outside U")
            if not node.factor.edges <= hypergraph.edges:
                return _violation("ii", layout.path(i), "factor has edges outside E")
            if len(node.vertices) < 2 or not is_body_connected(node.factor):
                return _violation("factor", layout.path(i), "factor is not body-connected")
            for v in node.vertices:
                position.setdefault(v, layout.span[i][0])

    # (ii) interior labels are edge sets of H
    for i, node in enumerate(layout.nodes):
        if isinstance(node, Internal) and not node.label <= hypergraph.edges:
            extra = next(iter(node.label - hypergraph.edges))
            return _violation("ii", layout.path(i), f"label edge {fmt(extra)} not in E")

    # (iii) body below one child, head below the other
    for i, node in enumerate(layout.nodes):
        if not isinstance(node, Internal):
            continue
        low, high = layout.span[i]
        middle = layout.span[i + 1][1]
        for edge in sorted(node.label, key=Edge.sort_key):
            head = position.get(edge.head)
            body = [position.get(v) for v in edge.body]
            if head is None or None in body:
                return _violation(
                    "iii", layout.path(i), f"edge {fmt(edge)} uses a vertex that is no leaf"
                )
            left_to_right = all(low <= p < middle for p in body) and middle <= head < high
            right_to_left = all(middle <= p < high for p in body) and low <= head < middle
            if not (left_to_right or right_to_left):
                return _violation(
                    "iii",
                    layout.path(i),
                    f"edge {fmt(edge)}: body and head are not below different children",
                )

    # (iv) labels partition U ∪ E
    seen_vertices: set[int] = set()
    seen_edges: set[Edge] = set()
    for i, node in enumerate(layout.nodes):
        if isinstance(node, Leaf):
            vertices, edges = frozenset({node.vertex}), frozenset()
        elif isinstance(node, FactorLeaf):
            vertices, edges = node.vertices, node.factor.edges
        else:
            vertices, edges = frozenset(), node.label
        if seen_vertices & vertices:
            return _violation("iv", layout.path(i), "vertex appears in more than one leaf")
        if seen_edges & edges:
            edge = next(iter(seen_edges & edges))
            return _violation(
                "iv", layout.path(i), f"edge {fmt(edge)} appears in more than one label"
            )
        seen_vertices |= vertices
        seen_edges |= edges
    if missing := hypergraph.vertices - seen_vertices:
        return _violation("iv", "", f"vertices {hypergraph.format_set(missing)} are no leaves")
    if missing := hypergraph.edges - seen_edges:
        edge = min(missing, key=Edge.sort_key)
        return _violation("iv", "", f"edge {fmt(edge)} is missing from all labels")
    return ValidationReport(True)


def validate_htree(hypergraph: Dihypergraph, tree: Node) -> ValidationReport:
    """Check the four H-tree labelling conditions; report the first violation."""
    return _validate(hypergraph, tree, factors=False)


def validate_factor_tree(hypergraph: Dihypergraph, tree: Node) -> ValidationReport:
    """Check a decomposition into H-factors; factor leaves must be body-connected."""
    return _validate(hypergraph, tree, factors=True)


def restrict_htree(
    hypergraph: Dihypergraph, tree: HTree, vertices: Iterable[int]
) -> HTree:
    """
    Restrict a valid H-tree of H to an H-tree of H[vertices].

    Interior nodes with leaves of `vertices` below both children keep the part
    of their label contained in `vertices`; the others are replaced by their
    relevant child.
    """

    report = validate_htree(hypergraph, tree)
    if not report:
        raise InvalidTree(f"not an H-tree ({report.condition}): {report.message}")
    vertices = hypergraph.require(vertices)
    if not vertices:
        raise EmptyVertexSet("cannot restrict to an empty vertex set")
    kept_edges = induced(hypergraph, vertices).edges

    layout = _Layout.of(tree)
    restricted: list[HTree | None] = [None] * len(layout.nodes)
    for i in range(len(layout.nodes) - 1, -1, -1):
        node = layout.nodes[i]
        if isinstance(node, Leaf):
            restricted[i] = node if node.vertex in vertices else None
            continue
        left, right = restricted[i + 1], restricted[layout.right[i]]
        if left is not None and right is not None:
            restricted[i] = Internal(node.label & kept_edges, left, right)
        else:
            restricted[i] = left if left is not None else right
    return restricted[0]


def reconstruct(tree: Node, names: Iterable[str]) -> Dihypergraph:
    """Recover the dihypergraph described by a tree over the name table `names`."""
    vertices: set[int] = set()
    edges: set[Edge] = set()
    for _, node in _preorder(tree):
        if isinstance(node, Leaf):
            node_vertices, node_edges = {node.vertex}, frozenset()
        elif isinstance(node, FactorLeaf):
            node_vertices, node_edges = node.vertices, node.factor.edges
        else:
            node_vertices, node_edges = frozenset(), node.label
        if vertices & node_vertices:
            raise InconsistentTree("a vertex labels more than one leaf")
        if edges & node_edges:
            raise InconsistentTree("an edge appears in more than one label")
        vertices |= node_vertices
        edges |= node_edges
    try:
        return Dihypergraph(tuple(names), frozenset(vertices), frozenset(edges))
    except DihypergraphError as e:
        raise InconsistentTree(f"labels do not describe a dihypergraph: {e}") from e
