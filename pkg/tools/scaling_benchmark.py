#!/usr/bin/env python3

"""
A script to measure how BuildTree scales on random digraphs.

Times `build_tree` on random digraphs of doubling size (m = 2n unit edges)
and prints the median runtime per size together with the ratio to the
previous size. Ratios close to 2 indicate near-linear scaling.
"""

import argparse
import random
import statistics
import time
from dataclasses import dataclass

from hdecomp.decomposition import build_tree
from hdecomp.instances import random_digraph


@dataclass
class Measurement:
    """Median runtime of `build_tree` on one instance size."""

    vertices: int
    edges: int
    runtime: float

    @classmethod
    def take(cls, vertices: int, runs: int, seed: int):
        """Generate an instance and time `runs` decompositions of it."""
        hypergraph = random_digraph(random.Random(seed), vertices, 2 * vertices)
        runtimes = []
        for _ in range(runs):
            time_start = time.perf_counter()
            build_tree(hypergraph)
            runtimes.append(time.perf_counter() - time_start)
        return cls(vertices, len(hypergraph.edges), statistics.median(runtimes))


def parse_args():
    """Parse command-line arguments."""

    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument(
        "--start", type=int, default=12_500, help="Smallest number of vertices"
    )
    parser.add_argument("--steps", type=int, default=4, help="Number of doublings")
    parser.add_argument("--runs", type=int, default=5, help="Runs per size (median)")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")
    return parser.parse_args()


def main():
    """Take measurements and print them as a table."""

    args = parse_args()
    previous = None
    print(f"{'vertices':>10} {'edges':>10} {'median [s]':>12} {'ratio':>7}")
    for step in range(args.steps + 1):
        measurement = Measurement.take(args.start * 2**step, args.runs, args.seed + step)
        ratio = f"{measurement.runtime / previous.runtime:7.2f}" if previous else f"{'-':>7}"
        print(
            f"{measurement.vertices:>10} {measurement.edges:>10} "
            f"{measurement.runtime:>12.3f} {ratio}"
        )
        previous = measurement


if __name__ == "__main__":
    main()
