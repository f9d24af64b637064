"""
This module contains brute-force reference implementations.

They share no code with the fast algorithms beyond the data model and
`is_split`/`is_closed`, and refuse instances beyond hard size limits.
"""

from __future__ import annotations

import itertools
import logging as log
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx

from .closure import ClosureSystem, enumerate_closed_sets, is_closed
from .connectivity import Partition, body_connected_components
from .core import Dihypergraph, induced
from .decomposition import build_tree, find_split, is_split
from .decorators import timing
from .errors import InstanceTooLarge

COMPONENTS_LIMIT = 12
SPLIT_LIMIT = 12
DECOMPOSABLE_LIMIT = 8
CLOSED_SETS_LIMIT = 12


def _check_size(hypergraph: Dihypergraph, limit: int, what: str):
    if len(hypergraph.vertices) > limit:
        raise InstanceTooLarge(
            f"{what} oracle accepts at most {limit} vertices, "
            f"got {len(hypergraph.vertices)}"
        )


@timing
def oracle_body_components(hypergraph: Dihypergraph) -> Partition:
    """Connected components of the graph joining two vertices whenever a body contains both."""
    _check_size(hypergraph, COMPONENTS_LIMIT, "components")
    graph = nx.Graph()
    graph.add_nodes_from(hypergraph.vertices)
    for edge in hypergraph.edges:
        graph.add_edges_from(itertools.combinations(sorted(edge.body), 2))
    blocks = sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)
    return Partition(tuple(blocks))


def _bipartitions(vertices: frozenset[int]):
    """Nontrivial bipartitions with the smallest vertex always in the first part."""
    first, *rest = sorted(vertices)
    for mask in range(2 ** len(rest) - 1):
        part1 = {first} | {v for i, v in enumerate(rest) if mask >> i & 1}
        yield frozenset(part1), vertices - part1


@timing
def oracle_has_split(
    hypergraph: Dihypergraph,
) -> tuple[frozenset[int], frozenset[int]] | None:
    """Return the first split found by exhaustive search over bipartitions, or None."""
    _check_size(hypergraph, SPLIT_LIMIT, "split")
    if len(hypergraph.vertices) < 2:
        return None
    for part1, part2 in _bipartitions(hypergraph.vertices):
        if is_split(hypergraph, part1, part2):
            return part1, part2
    return None


@timing
def oracle_is_hdecomposable(hypergraph: Dihypergraph) -> bool:
    """Recurse over all splits; a single vertex is H-decomposable."""
    _check_size(hypergraph, DECOMPOSABLE_LIMIT, "decomposability")

    @lru_cache(maxsize=None)
    def decomposable(vertices: frozenset[int]) -> bool:
        if len(vertices) == 1:
            return True
        sub = induced(hypergraph, vertices)
        return any(
            is_split(sub, part1, part2) and decomposable(part1) and decomposable(part2)
            for part1, part2 in _bipartitions(vertices)
        )

    return decomposable(hypergraph.vertices)


@timing
def oracle_closed_sets(hypergraph: Dihypergraph) -> ClosureSystem:
    """Filter every subset of U through `is_closed`."""
    _check_size(hypergraph, CLOSED_SETS_LIMIT, "closed-set")
    vertices = sorted(hypergraph.vertices)
    closed = [
        frozenset(subset)
        for r in range(len(vertices) + 1)
        for subset in itertools.combinations(vertices, r)
        if is_closed(hypergraph, subset)
    ]
    return ClosureSystem.build(hypergraph.vertices, closed, verify=False)


@dataclass
class OracleReport:
    """Agreement counts between fast algorithms and brute-force oracles."""

    instances: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    mismatches: list[tuple[str, Dihypergraph]] = field(default_factory=list)

    def record(self, name: str, agrees: bool, hypergraph: Dihypergraph):
        self.checks[name] = self.checks.get(name, 0) + 1
        if not agrees:
            log.warning("Oracle mismatch in %s for %s", name, hypergraph)
            self.mismatches.append((name, hypergraph))

    def __bool__(self):
        return not self.mismatches


Comparison = Callable[[Dihypergraph], bool]


def _components_agree(hypergraph: Dihypergraph) -> bool:
    return body_connected_components(hypergraph) == oracle_body_components(hypergraph)


def _split_agrees(hypergraph: Dihypergraph) -> bool:
    if len(hypergraph.vertices) < 2:
        return True
    return (find_split(hypergraph) is None) == (oracle_has_split(hypergraph) is None)


def _decomposable_agrees(hypergraph: Dihypergraph) -> bool:
    return bool(build_tree(hypergraph)) == oracle_is_hdecomposable(hypergraph)


def _closed_sets_agree(hypergraph: Dihypergraph) -> bool:
    return enumerate_closed_sets(hypergraph) == oracle_closed_sets(hypergraph)


COMPARISONS: dict[str, tuple[int, Comparison]] = {
    "components": (COMPONENTS_LIMIT, _components_agree),
    "split": (SPLIT_LIMIT, _split_agrees),
    "decomposable": (DECOMPOSABLE_LIMIT, _decomposable_agrees),
    "closed_sets": (CLOSED_SETS_LIMIT, _closed_sets_agree),
}


def compare_with_oracles(
    hypergraphs, report: OracleReport | None = None
) -> OracleReport:
    """Run every comparison whose oracle accepts the instance size."""
    report = report or OracleReport()
    for hypergraph in hypergraphs:
        report.instances += 1
        for name, (limit, agrees) in COMPARISONS.items():
            if len(hypergraph.vertices) <= limit:
                report.record(name, agrees(hypergraph), hypergraph)
    log.info(
        "Compared %d instance(s) with the oracles: %d mismatch(es)",
        report.instances,
        len(report.mismatches),
    )
    return report
