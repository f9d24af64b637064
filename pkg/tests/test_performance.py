import random
import statistics
import time

import pytest

from hdecomp.closure import enumerate_closed_sets
from hdecomp.decomposition import build_tree, tree_stats
from hdecomp.instances import exponential_gap_family, random_digraph


def median_runtime(num_vertices: int, runs: int = 5) -> float:
    hypergraph = random_digraph(random.Random(num_vertices), num_vertices, 2 * num_vertices)
    runtimes = []
    for _ in range(runs):
        time_start = time.perf_counter()
        build_tree(hypergraph)
        runtimes.append(time.perf_counter() - time_start)
    return statistics.median(runtimes)


@pytest.mark.slow
def test_large_digraph_decomposes_quickly() -> None:
    n = 100_000
    hypergraph = random_digraph(random.Random(0), n, 2 * n)
    time_start = time.perf_counter()
    tree = build_tree(hypergraph)
    runtime = time.perf_counter() - time_start
    assert tree_stats(tree).leaves == n
    assert runtime < 2.0


@pytest.mark.slow
def test_runtime_grows_near_linearly() -> None:
    small = median_runtime(25_000)
    large = median_runtime(50_000)
    assert large / small < 3


def test_exponential_gap_family_is_fast() -> None:
    time_start = time.perf_counter()
    assert len(enumerate_closed_sets(exponential_gap_family(4))) == 26
    assert time.perf_counter() - time_start < 10
