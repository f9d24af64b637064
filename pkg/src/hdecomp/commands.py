"""
This module contains the command implementations of the command-line interface.

Every command returns its exit code:
  - 0: success
  - 1: valid negative answer (FAIL, invalid tree, violation, mismatch, no path)
  - 2: unreadable or malformed input and usage errors
  - 3: size limit exceeded
"""

import logging as log
import random
import sys
from collections.abc import Callable

from .closure import (check_corollary, check_split_theorem, enumerate_closed_sets,
                      forward_chain)
from .config import CommandSettings, Settings
from .connectivity import body_connected_components, body_path
from .core import Dihypergraph, size
from .decomposition import (FactorLeaf, build_factor_tree, build_tree, leaves,
                            tree_stats, validate_factor_tree, validate_htree)
from .errors import DihypergraphError, SizeLimitExceeded
from .instances import random_dihypergraph
from .oracle import compare_with_oracles
from .output import Output, read_tree
from .parser import read_dihypergraph

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def cmd_decompose(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    tree = build_tree(hypergraph)
    output.tree(tree)
    return EXIT_OK if tree else EXIT_NEGATIVE


def cmd_factors(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    output.tree(build_factor_tree(hypergraph))
    return EXIT_OK


def cmd_closure(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    names = settings.command_settings.vertex_set
    if names is None:
        output.closure(enumerate_closed_sets(hypergraph, settings.limit_settings.ground_set))
    else:
        vertices = hypergraph.ids(names)
        output.closed_set(vertices, forward_chain(hypergraph, vertices))
    return EXIT_OK


def cmd_verify(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    tree = read_tree(hypergraph, settings.command_settings.tree)
    if any(isinstance(leaf, FactorLeaf) for leaf in leaves(tree)):
        report = validate_factor_tree(hypergraph, tree)
    else:
        report = validate_htree(hypergraph, tree)
    output.validation(report)
    return EXIT_OK if report else EXIT_NEGATIVE


def cmd_check_split(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    part1 = hypergraph.ids(settings.command_settings.part1)
    report = check_split_theorem(
        hypergraph, part1, hypergraph.vertices - part1, settings.limit_settings.ground_set
    )
    output.split_report(report)
    return EXIT_NEGATIVE if report.violations else EXIT_OK


def cmd_check_corollary(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    report = check_corollary(hypergraph, settings.limit_settings.ground_set)
    output.corollary(report)
    return EXIT_OK if report else EXIT_NEGATIVE


def cmd_components(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    partition = body_connected_components(hypergraph)
    endpoints = settings.command_settings.path
    if endpoints is None:
        output.components(partition)
        return EXIT_OK
    source, target = (min(hypergraph.ids([name])) for name in endpoints)
    path = body_path(hypergraph, source, target)
    output.components(partition, path, with_path=True)
    return EXIT_NEGATIVE if path is None else EXIT_OK


def cmd_stats(settings: Settings, hypergraph: Dihypergraph, output: Output) -> int:
    data = {
        "vertices": len(hypergraph.vertices),
        "edges": len(hypergraph.edges),
        "size": size(hypergraph),
        "components": len(body_connected_components(hypergraph)),
        "decomposable": bool(build_tree(hypergraph)),
    }
    output.stats(data, tree_stats(build_factor_tree(hypergraph)))
    return EXIT_OK


def cmd_oracle(settings: Settings, hypergraph: Dihypergraph | None, output: Output) -> int:
    if hypergraph is not None:
        instances = [hypergraph]
    else:
        oracle_settings = settings.oracle_settings
        rng = random.Random(oracle_settings.seed)
        instances = (
            random_dihypergraph(rng, rng.randint(1, 6), rng.randint(0, 5))
            for _ in range(oracle_settings.samples)
        )
    report = compare_with_oracles(instances)
    output.oracle(report)
    return EXIT_OK if report else EXIT_NEGATIVE


Command = Callable[[Settings, Dihypergraph, Output], int]

COMMANDS: dict[str, Command] = {
    "decompose": cmd_decompose,
    "factors": cmd_factors,
    "closure": cmd_closure,
    "verify": cmd_verify,
    "check-split": cmd_check_split,
    "check-corollary": cmd_check_corollary,
    "components": cmd_components,
    "stats": cmd_stats,
    "oracle": cmd_oracle,
}


def _read_input(command_settings: CommandSettings) -> Dihypergraph | None:
    if command_settings.input is None:
        return None
    hypergraph = read_dihypergraph(command_settings.input)
    log.info(
        "Read %s (vertices=%d, edges=%d)",
        command_settings.input,
        len(hypergraph.vertices),
        len(hypergraph.edges),
    )
    return hypergraph


def execute(settings: Settings, output: Output | None = None) -> int:
    """Read the input, run the requested command and map errors to exit codes."""
    command_settings = settings.command_settings
    try:
        hypergraph = _read_input(command_settings)
        if output is None:
            output = Output(hypergraph, command_settings.output_format)
        else:
            output.hypergraph = hypergraph
        code = COMMANDS[command_settings.command](settings, hypergraph, output)
    except SizeLimitExceeded as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (DihypergraphError, OSError) as e:
        log.debug("Command %s failed", command_settings.command, exc_info=True)
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE
    log.info("Command %s finished with exit code %d", command_settings.command, code)
    return code
