"""Shared fixtures: named instances and helpers converting vertex names to index sets."""

from pathlib import Path

import pytest

from hdecomp import instances
from hdecomp.core import Dihypergraph
from hdecomp.parser import serialize


def ids(hypergraph: Dihypergraph, names: str) -> frozenset[int]:
    """Convert a string of single-character vertex names ("123") to an index set."""
    return hypergraph.ids(list(names))


@pytest.fixture
def running_example() -> Dihypergraph:
    return instances.running_example()


@pytest.fixture
def triangle() -> Dihypergraph:
    return instances.body_connected_triangle()


@pytest.fixture
def two_tree_path() -> Dihypergraph:
    return instances.two_tree_path()


@pytest.fixture
def lattice_example() -> Dihypergraph:
    return instances.lattice_example()


@pytest.fixture
def write_instance(tmp_path: Path):
    """Write an instance to a file and return its path."""

    def write(hypergraph: Dihypergraph, name: str = "instance.dh") -> Path:
        path = tmp_path / name
        path.write_text(serialize(hypergraph), encoding="UTF-8")
        return path

    return write
