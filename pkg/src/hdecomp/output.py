"""
This module contains the rendering of results as text, JSON and DOT, and the
JSON tree reader used by `verify`.

Trees are rendered flat (one line or DOT statement per node, numbered in
breadth-first order). JSON trees nest; they are written and read with an
explicit stack, so caterpillars of any depth round-trip through `verify`.
"""

import json
import re
import sys
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TextIO

from .closure import ClosureSystem, CorollaryReport, LatticeCheck, SplitTheoremReport
from .connectivity import Partition
from .core import Dihypergraph, Edge
from .decomposition import (Fail, FactorLeaf, Internal, Leaf, Node, TreeStats,
                            ValidationReport)
from .errors import InputSyntaxError, Location
from .oracle import OracleReport
from .parser import read_document, serialize

FORMATS = ("text", "json", "dot")

_WHITESPACE = re.compile(r"[ \t\n\r]*")


def dump_json(data: Any, indent: int | None = 2) -> str:
    """
    Return json.dumps(data, indent=indent) for dicts, lists and scalars.

    Nesting is handled with an explicit stack, since JSON trees nest one
    object per tree node and caterpillars are as deep as they are long.
    Trees are written with indent=None.
    """

    chunks = []
    # strings on the stack are literal chunks, tuples are (value, depth)
    stack: list[str | tuple[Any, int]] = [(data, 0)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            chunks.append(item)
            continue
        value, depth = item
        if not isinstance(value, (dict, list, tuple)) or not value:
            chunks.append(json.dumps(value))
            continue
        if isinstance(value, dict):
            opening, closing = "{", "}"
            entries = [(json.dumps(key) + ": ", v) for key, v in value.items()]
        else:
            opening, closing = "[", "]"
            entries = [("", v) for v in value]
        if indent is None:
            inner, outer, comma = "", "", ", "
        else:
            inner = "\n" + " " * (indent * (depth + 1))
            outer, comma = "\n" + " " * (indent * depth), ","
        stack.append(outer + closing)
        for i in range(len(entries) - 1, -1, -1):
            prefix, entry = entries[i]
            stack.append((entry, depth + 1))
            stack.append((comma if i else opening) + inner + prefix)
    return "".join(chunks)


def load_json(text: str) -> Any:
    """json.loads without recursing on the nesting depth; errors are JSONDecodeError."""
    decoder = json.JSONDecoder()
    containers: list[dict | list] = []
    keys: list[str | None] = []
    result = None

    def skip(pos: int) -> int:
        return _WHITESPACE.match(text, pos).end()

    def read_key(pos: int) -> tuple[str, int]:
        pos = skip(pos)
        if text[pos : pos + 1] != '"':
            raise json.JSONDecodeError(
                "Expecting property name enclosed in double quotes", text, pos
            )
        key, pos = json.decoder.scanstring(text, pos + 1)
        pos = skip(pos)
        if text[pos : pos + 1] != ":":
            raise json.JSONDecodeError("Expecting ':' delimiter", text, pos)
        return key, pos + 1

    pos = 0
    while True:
        pos = skip(pos)
        opening = text[pos : pos + 1]
        if opening in ("{", "["):
            value = {} if opening == "{" else []
            pos += 1
        else:
            value, pos = decoder.raw_decode(text, pos)
            opening = ""
        if not containers:
            result = value
        elif isinstance(containers[-1], list):
            containers[-1].append(value)
        else:
            containers[-1][keys[-1]] = value

        if opening:
            pos = skip(pos)
            if text[pos : pos + 1] != ("}" if opening == "{" else "]"):
                containers.append(value)
                keys.append(None)
                if opening == "{":
                    keys[-1], pos = read_key(pos)
                continue
            pos += 1

        # the value is complete: close finished containers up to the next ','
        while containers:
            pos = skip(pos)
            char = text[pos : pos + 1]
            if char == ",":
                if isinstance(containers[-1], dict):
                    keys[-1], pos = read_key(pos + 1)
                else:
                    pos += 1
                break
            if char != ("}" if isinstance(containers[-1], dict) else "]"):
                raise json.JSONDecodeError("Expecting ',' delimiter", text, pos)
            containers.pop()
            keys.pop()
            pos += 1
        else:
            pos = skip(pos)
            if pos != len(text):
                raise json.JSONDecodeError("Extra data", text, pos)
            return result


def edge_to_json(hypergraph: Dihypergraph, edge: Edge) -> dict[str, Any]:
    return {"body": hypergraph.sorted_names(edge.body), "head": hypergraph.name(edge.head)}


def _label_to_json(hypergraph: Dihypergraph, edges: Iterable[Edge]) -> list[dict[str, Any]]:
    return [edge_to_json(hypergraph, e) for e in sorted(edges, key=Edge.sort_key)]


def tree_to_json(hypergraph: Dihypergraph, tree: Node) -> dict[str, Any]:
    """Convert a tree to nested dicts: {"leaf"}, {"label", "left", "right"} or {"factor"}."""
    stack: list[tuple[Node, bool]] = [(tree, False)]
    results: list[dict[str, Any]] = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Leaf):
            results.append({"leaf": hypergraph.name(node.vertex)})
        elif isinstance(node, FactorLeaf):
            results.append(
                {
                    "factor": {
                        "vertices": hypergraph.sorted_names(node.vertices),
                        "edges": _label_to_json(hypergraph, node.factor.edges),
                    }
                }
            )
        elif expanded:
            right = results.pop()
            left = results.pop()
            results.append(
                {
                    "label": _label_to_json(hypergraph, node.label),
                    "left": left,
                    "right": right,
                }
            )
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return results.pop()


def _names(data: Any, what: str) -> list[str]:
    if not isinstance(data, list) or not all(isinstance(name, str) for name in data):
        raise InputSyntaxError(f"{what} must be a list of vertex names")
    return data


def _edge_from_json(hypergraph: Dihypergraph, data: Any) -> Edge:
    if not isinstance(data, dict):
        raise InputSyntaxError(f"edge must be an object, got {type(data).__name__}")
    if not isinstance(data.get("head"), str):
        raise InputSyntaxError("edge needs a head name")
    (head,) = hypergraph.ids([data["head"]])
    return Edge(hypergraph.ids(_names(data.get("body"), "edge body")), head)


def _edges_from_json(hypergraph: Dihypergraph, data: Any, what: str) -> frozenset[Edge]:
    if not isinstance(data, list):
        raise InputSyntaxError(f"{what} must be a list of edges")
    return frozenset(_edge_from_json(hypergraph, e) for e in data)


def _factor_from_json(hypergraph: Dihypergraph, data: Any) -> FactorLeaf:
    if not isinstance(data, dict):
        raise InputSyntaxError(f"factor must be an object, got {type(data).__name__}")
    vertices = hypergraph.ids(_names(data.get("vertices"), "factor vertices"))
    edges = _edges_from_json(hypergraph, data.get("edges", []), "factor edges")
    return FactorLeaf(Dihypergraph(hypergraph.names, vertices, edges))


def tree_from_json(hypergraph: Dihypergraph, data: Any) -> Node:
    """Rebuild a tree from its JSON form; vertex names are resolved against `hypergraph`."""
    stack: list[tuple[Any, bool]] = [(data, False)]
    results: list[Node] = []
    while stack:
        item, expanded = stack.pop()
        if not isinstance(item, dict):
            raise InputSyntaxError(f"tree node must be an object, got {type(item).__name__}")
        if "leaf" in item:
            if not isinstance(item["leaf"], str):
                raise InputSyntaxError("leaf must be a vertex name")
            (vertex,) = hypergraph.ids([item["leaf"]])
            results.append(Leaf(vertex))
        elif "factor" in item:
            results.append(_factor_from_json(hypergraph, item["factor"]))
        elif not {"label", "left", "right"} <= item.keys():
            raise InputSyntaxError("interior node needs 'label', 'left' and 'right'")
        elif expanded:
            right = results.pop()
            left = results.pop()
            label = _edges_from_json(hypergraph, item["label"], "label")
            results.append(Internal(label, left, right))
        else:
            stack.append((item, True))
            stack.append((item["right"], False))
            stack.append((item["left"], False))
    return results.pop()


def read_tree(hypergraph: Dihypergraph, path: Path) -> Node:
    """Read a JSON tree file."""
    try:
        data = load_json(read_document(path))
    except json.JSONDecodeError as e:
        raise InputSyntaxError(e.msg, Location(e.lineno, e.colno)) from e
    if isinstance(data, dict) and "tree" in data:
        data = data["tree"]
    return tree_from_json(hypergraph, data)


def _numbered(tree: Node) -> Iterator[tuple[int, Node, tuple[int, int] | None]]:
    """Yield (id, node, child ids) in breadth-first order."""
    queue = deque([tree])
    next_id = 1
    number = 0
    while queue:
        node = queue.popleft()
        children = None
        if isinstance(node, Internal):
            children = (next_id, next_id + 1)
            next_id += 2
            queue.append(node.left)
            queue.append(node.right)
        yield number, node, children
        number += 1


@dataclass
class Output:
    """Class to render command results on a text stream."""

    hypergraph: Dihypergraph | None
    output_format: str = "text"
    stream: TextIO = field(default_factory=lambda: sys.stdout)

    def emit(self, text: str):
        self.stream.write(text if text.endswith("\n") else text + "\n")

    def emit_json(self, data: Any, indent: int | None = 2):
        self.emit(dump_json(data, indent))

    def names(self, vertices: Iterable[int]) -> list[str]:
        return self.hypergraph.sorted_names(vertices)

    def label(self, edges: Iterable[Edge]) -> str:
        edges = sorted(edges, key=Edge.sort_key)
        return "{" + ", ".join(self.hypergraph.format_edge(e) for e in edges) + "}"

    def describe(self, node: Node) -> str:
        if isinstance(node, Leaf):
            return self.hypergraph.name(node.vertex)
        if isinstance(node, FactorLeaf):
            factor = node.factor
            return f"factor {factor.format_set(factor.vertices)} {self.label(factor.edges)}"
        return self.label(node.label)

    def tree(self, tree: Node | Fail):
        """Render a tree (or the reason why none exists)."""
        if isinstance(tree, Fail):
            if self.output_format == "json":
                self.emit_json(
                    {"fail": {"reason": tree.reason, "vertices": self.names(tree.vertices)}}
                )
            else:
                self.emit(f"FAIL: {tree.reason} {self.hypergraph.format_set(tree.vertices)}")
            return

        if self.output_format == "json":
            self.emit_json(tree_to_json(self.hypergraph, tree), indent=None)
        elif self.output_format == "dot":
            self.emit(self.dot(tree))
        else:
            lines = []
            for number, node, children in _numbered(tree):
                if isinstance(node, Leaf):
                    lines.append(f"{number}: leaf {self.describe(node)}")
                elif children is None:
                    lines.append(f"{number}: {self.describe(node)}")
                else:
                    left, right = children
                    lines.append(f"{number}: node {self.describe(node)} -> {left} {right}")
            self.emit("\n".join(lines))

    def dot(self, tree: Node) -> str:
        """Return a DOT digraph: boxes for interior nodes, ellipses for leaves."""
        lines = ["digraph htree {", "  node [shape=box];"]
        for number, node, children in _numbered(tree):
            text = self.describe(node).replace("\\", "\\\\").replace('"', '\\"')
            shape = "" if children else ", shape=ellipse"
            lines.append(f'  n{number} [label="{text}"{shape}];')
            if children:
                lines.extend(f"  n{number} -> n{child};" for child in children)
        lines.append("}")
        return "\n".join(lines)

    def closure_to_json(self, system: ClosureSystem) -> dict[str, Any]:
        return {
            "ground": self.names(system.ground),
            "closed_sets": [self.names(s) for s in system],
        }

    def closure(self, system: ClosureSystem):
        """Render a closure system, one closed set per line."""
        if self.output_format == "json":
            self.emit_json(self.closure_to_json(system))
            return
        fmt = self.hypergraph.format_set
        lines = [f"{len(system)} closed set(s) on {fmt(system.ground)}"]
        lines.extend(fmt(s) for s in system)
        self.emit("\n".join(lines))

    def closed_set(self, vertices: frozenset[int], closed: frozenset[int]):
        """Render the closure of a single set."""
        if self.output_format == "json":
            self.emit_json({"set": self.names(vertices), "closure": self.names(closed)})
        else:
            self.emit(self.hypergraph.format_set(closed))

    def validation(self, report: ValidationReport):
        if self.output_format == "json":
            self.emit_json(
                {
                    "valid": report.valid,
                    "condition": report.condition,
                    "path": report.path,
                    "message": report.message,
                }
            )
        elif report:
            self.emit("valid")
        else:
            self.emit(
                f"INVALID: condition ({report.condition}) at node "
                f"{report.path or 'root'}: {report.message}"
            )

    def lattice_check_to_json(self, check: LatticeCheck) -> dict[str, Any]:
        witness = [self.names(s) for s in check.witness] if check.witness else None
        return {"holds": check.holds, "witness": witness, "reason": check.reason}

    def split_report(self, report: SplitTheoremReport):
        """Render the closure systems along a split and the status of every theorem item."""
        items = {name: status.value for name, status in report.items.items()}
        if self.output_format == "json":
            self.emit_json(
                {
                    "u1": self.names(report.part1),
                    "u2": self.names(report.part2),
                    "crossing": _label_to_json(self.hypergraph, report.crossing),
                    "closure": self.closure_to_json(report.closure),
                    "closure1": self.closure_to_json(report.closure1),
                    "closure2": self.closure_to_json(report.closure2),
                    "items": items,
                }
            )
            return
        fmt = self.hypergraph.format_set

        def family(system: ClosureSystem) -> str:
            return "{" + ", ".join(fmt(s) for s in system) + "}"

        lines = [
            f"U1 = {fmt(report.part1)}",
            f"U2 = {fmt(report.part2)}",
            f"crossing edges: {self.label(report.crossing)}",
            f"F_H ({len(report.closure)}): {family(report.closure)}",
            f"F1 ({len(report.closure1)}): {family(report.closure1)}",
            f"F2 ({len(report.closure2)}): {family(report.closure2)}",
        ]
        lines.extend(f"item ({name}): {status}" for name, status in items.items())
        self.emit("\n".join(lines))

    def corollary(self, report: CorollaryReport):
        check = report.check
        if self.output_format == "json":
            self.emit_json(
                {
                    "meet_sublattice": self.lattice_check_to_json(check),
                    "closure": self.closure_to_json(report.closure),
                    "factors": [self.closure_to_json(f) for f in report.factors],
                    "product_size": len(report.product),
                }
            )
            return
        lines = [
            f"|F_H| = {len(report.closure)}",
            f"H-factors: {len(report.factors)}",
            f"|product| = {len(report.product)}",
        ]
        if check:
            lines.append("F_H is a meet-sublattice of the product of its H-factors")
        else:
            first, second = (self.hypergraph.format_set(s) for s in check.witness)
            lines.append(f"VIOLATION: {check.reason} for {first} and {second}")
        self.emit("\n".join(lines))

    def components(self, partition: Partition, path: tuple | None = None, with_path=False):
        """Render body-connected components and, if requested, a body-path witness."""
        if self.output_format == "json":
            data: dict[str, Any] = {"components": [self.names(b) for b in partition]}
            if with_path:
                data["path"] = None if path is None else [
                    edge_to_json(self.hypergraph, step)
                    if isinstance(step, Edge)
                    else self.hypergraph.name(step)
                    for step in path
                ]
            self.emit_json(data)
            return
        lines = [self.hypergraph.format_set(b) for b in partition]
        if with_path:
            if path is None:
                lines.append("path: none")
            else:
                steps = [
                    self.hypergraph.format_edge(step)
                    if isinstance(step, Edge)
                    else self.hypergraph.name(step)
                    for step in path
                ]
                lines.append("path: " + ", ".join(steps))
        self.emit("\n".join(lines))

    def stats(self, data: dict[str, Any], tree_stats: TreeStats):
        data = data | {
            "tree_nodes": tree_stats.nodes,
            "tree_leaves": tree_stats.leaves,
            "factor_leaves": tree_stats.factors,
            "tree_depth": tree_stats.depth,
        }
        if self.output_format == "json":
            self.emit_json(data)
        else:
            self.emit("\n".join(f"{key}: {value}" for key, value in data.items()))

    def oracle(self, report: OracleReport):
        """Render agreement counts; mismatching instances are printed in the input format."""
        if self.output_format == "json":
            self.emit_json(
                {
                    "instances": report.instances,
                    "checks": report.checks,
                    "mismatches": [
                        {"check": name, "instance": serialize(h)}
                        for name, h in report.mismatches
                    ],
                }
            )
            return
        lines = [f"instances: {report.instances}"]
        lines.extend(f"{name}: {count} check(s)" for name, count in report.checks.items())
        lines.append(f"mismatches: {len(report.mismatches)}")
        for name, hypergraph in report.mismatches:
            lines.append(f"# {name}")
            lines.append(serialize(hypergraph).rstrip("\n"))
        self.emit("\n".join(lines))
