"""
This module contains closure systems of dihypergraphs.

Closed sets are computed with forward chaining on integer bitmasks (bit i
stands for vertex i). The module also provides traces, products, lattice
operations and mechanical checks of how closure systems behave along splits
and H-factor decompositions.
"""

from __future__ import annotations

import enum
import logging as log
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property, reduce

from .core import Dihypergraph, Edge, bipartite_part, induced
from .decomposition import Internal, Node, build_factor_tree, is_split, leaf_vertices
from .decorators import timing
from .errors import (GroundSetTooLarge, NotAClosureSystem, NotAMember,
                     NotASplit, OverlappingGrounds, UnknownVertex)

DEFAULT_GROUND_SET_LIMIT = 24

Rules = list[tuple[int, int]]


def to_mask(vertices: Iterable[int]) -> int:
    """Encode a vertex set as a bitmask."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    """Decode a bitmask into a vertex set."""
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(result)


def compile_rules(hypergraph: Dihypergraph) -> Rules:
    """Return (body mask, head bit) pairs for all edges."""
    return [(to_mask(e.body), 1 << e.head) for e in hypergraph.edge_list]


def close_mask(mask: int, rules: Rules) -> int:
    """Forward chaining on bitmasks: fire every edge whose body is contained until stable."""
    pending = rules
    changed = True
    while changed:
        changed = False
        waiting = []
        for body, head in pending:
            if body & ~mask:
                waiting.append((body, head))
            elif not mask & head:
                mask |= head
                changed = True
        pending = waiting
    return mask


def forward_chain(hypergraph: Dihypergraph, vertices: Iterable[int]) -> frozenset[int]:
    """Return the least closed superset X^H of `vertices`."""
    vertices = hypergraph.require(vertices)
    return from_mask(close_mask(to_mask(vertices), compile_rules(hypergraph)))


def is_closed(hypergraph: Dihypergraph, vertices: Iterable[int]) -> bool:
    """Return whether no edge has its body inside `vertices` and its head outside."""
    vertices = hypergraph.require(vertices)
    return not any(
        e.body <= vertices and e.head not in vertices for e in hypergraph.edges
    )


def _canonical_key(closed_set: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return len(closed_set), tuple(sorted(closed_set))


@dataclass(frozen=True)
class ClosureSystem:
    """
    Family of closed subsets of a ground set.

    Closed sets are kept in canonical order (by size, then lexicographically
    on sorted indices), which fixes equality and serialization.
    """

    ground: frozenset[int]
    closed_sets: tuple[frozenset[int], ...]

    @classmethod
    def build(
        cls, ground: Iterable[int], family: Iterable[Iterable[int]], verify: bool = True
    ) -> "ClosureSystem":
        """Create instance from any family; check closure-system invariants if `verify`."""
        ground = frozenset(ground)
        family = {frozenset(s) for s in family}
        if verify:
            _verify_closure_system(ground, family)
        return cls(ground, tuple(sorted(family, key=_canonical_key)))

    @cached_property
    def members(self) -> frozenset[frozenset[int]]:
        return frozenset(self.closed_sets)

    @cached_property
    def masks(self) -> frozenset[int]:
        return frozenset(to_mask(s) for s in self.closed_sets)

    def __len__(self):
        return len(self.closed_sets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.closed_sets)

    def __contains__(self, vertices) -> bool:
        return frozenset(vertices) in self.members

    def require(self, vertices: Iterable[int]) -> frozenset[int]:
        """Return `vertices` as a frozenset; raise NotAMember unless it is a closed set."""
        vertices = frozenset(vertices)
        if vertices not in self.members:
            raise NotAMember(f"{sorted(vertices)} is not a closed set")
        return vertices


def _verify_closure_system(ground: frozenset[int], family: set[frozenset[int]]):
    if ground not in family:
        raise NotAClosureSystem("family does not contain its ground set")
    outside = [s for s in family if not s <= ground]
    if outside:
        raise NotAClosureSystem(f"{sorted(outside[0])} is not a subset of the ground set")
    masks = [to_mask(s) for s in family]
    known = set(masks)
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if a & b not in known:
                raise NotAClosureSystem(
                    f"intersection of {sorted(from_mask(a))} and "
                    f"{sorted(from_mask(b))} is missing"
                )


@timing
def enumerate_closed_sets(
    hypergraph: Dihypergraph, limit: int = DEFAULT_GROUND_SET_LIMIT
) -> ClosureSystem:
    """
    Enumerate the closure system F_H of a dihypergraph.

    Traverses the closure lattice from the closure of the empty set, closing
    F ∪ {x} for every closed F and x outside F; the work is proportional to
    the number of closed sets, not to 2^|U|.
    """

    if len(hypergraph.vertices) > limit:
        raise GroundSetTooLarge(
            f"ground set of {len(hypergraph.vertices)} vertices exceeds the limit of {limit}"
        )
    rules = compile_rules(hypergraph)
    ground = to_mask(hypergraph.vertices)
    bottom = close_mask(0, rules)
    seen = {bottom}
    queue = deque([bottom])
    while queue:
        current = queue.popleft()
        rest = ground & ~current
        while rest:
            bit = rest & -rest
            rest ^= bit
            closed = close_mask(current | bit, rules)
            if closed not in seen:
                seen.add(closed)
                queue.append(closed)
    log.debug(
        "Enumerated %d closed sets on %d vertices", len(seen), len(hypergraph.vertices)
    )
    return ClosureSystem.build(
        hypergraph.vertices, (from_mask(m) for m in seen), verify=False
    )


def trace(system: ClosureSystem, vertices: Iterable[int]) -> ClosureSystem:
    """Return the trace {F ∩ U' | F ∈ F} on the ground set U'."""
    vertices = frozenset(vertices)
    if not vertices <= system.ground:
        raise UnknownVertex(
            f"vertices {sorted(vertices - system.ground)} are not in the ground set"
        )
    return ClosureSystem.build(vertices, (f & vertices for f in system))


def product(first: ClosureSystem, second: ClosureSystem) -> ClosureSystem:
    """Return the direct product {A ∪ B} of two closure systems on disjoint grounds."""
    if first.ground & second.ground:
        raise OverlappingGrounds(
            f"ground sets share {sorted(first.ground & second.ground)}"
        )
    return ClosureSystem.build(
        first.ground | second.ground, (a | b for a in first for b in second)
    )


def iterated_product(systems: Iterable[ClosureSystem]) -> ClosureSystem:
    """Return the direct product of several closure systems on pairwise disjoint grounds."""
    return reduce(product, systems)


def meet(system: ClosureSystem, first: Iterable[int], second: Iterable[int]) -> frozenset[int]:
    """Return the greatest lower bound of two closed sets (their intersection)."""
    return system.require(first) & system.require(second)


def _join_mask(masks: Iterable[int], union: int) -> int:
    return reduce(lambda a, b: a & b, (m for m in masks if m & union == union))


def join(system: ClosureSystem, first: Iterable[int], second: Iterable[int]) -> frozenset[int]:
    """Return the least upper bound: the intersection of all closed supersets of A ∪ B."""
    union = system.require(first) | system.require(second)
    return from_mask(_join_mask(system.masks, to_mask(union)))


@dataclass(frozen=True)
class LatticeCheck:
    """Outcome of a (meet-)sublattice check; `witness` is the first offending pair."""

    holds: bool
    witness: tuple[frozenset[int], frozenset[int]] | None = None
    reason: str = ""

    def __bool__(self):
        return self.holds


def _pairs(system: ClosureSystem) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    sets = system.closed_sets
    for i, a in enumerate(sets):
        for b in sets[i + 1 :]:
            yield a, b


def is_meet_sublattice(system: ClosureSystem, ambient: ClosureSystem) -> LatticeCheck:
    """Return whether `system` ⊆ `ambient` and is closed under the meets of `ambient`."""
    for closed_set in system:
        if closed_set not in ambient.members:
            return LatticeCheck(False, (closed_set, closed_set), "not a member")
    for a, b in _pairs(system):
        if a & b not in system.members:
            return LatticeCheck(False, (a, b), "meet not preserved")
    return LatticeCheck(True)


def is_sublattice(system: ClosureSystem, ambient: ClosureSystem) -> LatticeCheck:
    """Return whether `system` is a meet-sublattice that also preserves the joins of `ambient`."""
    check = is_meet_sublattice(system, ambient)
    if not check:
        return check
    for a, b in _pairs(system):
        joined = from_mask(_join_mask(ambient.masks, to_mask(a | b)))
        if joined not in system.members:
            return LatticeCheck(False, (a, b), "join not preserved")
    return LatticeCheck(True)


class ItemStatus(enum.Enum):
    """Status of one item of the split theorem."""

    HOLDS = "holds"
    NOT_APPLICABLE = "does not apply"
    VIOLATION = "VIOLATION"


def _status(applicable: bool, holds: bool) -> ItemStatus:
    if not applicable:
        return ItemStatus.NOT_APPLICABLE
    return ItemStatus.HOLDS if holds else ItemStatus.VIOLATION


@dataclass(frozen=True)
class SplitTheoremReport:
    """Closure systems along a split and the status of each item of the split theorem."""

    part1: frozenset[int]
    part2: frozenset[int]
    crossing: frozenset[Edge]
    closure: ClosureSystem
    closure1: ClosureSystem
    closure2: ClosureSystem
    item_i: ItemStatus
    item_ii: ItemStatus
    item_iii: ItemStatus
    item_iv: ItemStatus

    @property
    def items(self) -> dict[str, ItemStatus]:
        return {
            "i": self.item_i,
            "ii": self.item_ii,
            "iii": self.item_iii,
            "iv": self.item_iv,
        }

    @property
    def violations(self) -> list[str]:
        return [k for k, v in self.items.items() if v is ItemStatus.VIOLATION]


@timing
def check_split_theorem(
    hypergraph: Dihypergraph,
    part1: Iterable[int],
    part2: Iterable[int],
    limit: int = DEFAULT_GROUND_SET_LIMIT,
) -> SplitTheoremReport:
    """
    Check how F_H relates to the closure systems F1, F2 of both sides of a split.

    (i)   F ∩ Ui ∈ Fi for all F ∈ F_H, and F_H ⊆ F1 × F2 (always applicable);
    (ii)  F_H = F1 × F2 if no edge crosses the split;
    (iii) both traces equal F1 and F2 if every crossing body lies in U1;
    (iv)  the same if every crossing body lies in U2.
    """

    part1, part2 = frozenset(part1), frozenset(part2)
    if not is_split(hypergraph, part1, part2):
        raise NotASplit(
            f"({hypergraph.format_set(part1)}, {hypergraph.format_set(part2)}) is not a split"
        )
    crossing = bipartite_part(hypergraph, part1, part2)
    closure = enumerate_closed_sets(hypergraph, limit)
    closure1 = enumerate_closed_sets(induced(hypergraph, part1), limit)
    closure2 = enumerate_closed_sets(induced(hypergraph, part2), limit)
    both = product(closure1, closure2)

    item_i = all(
        f & part1 in closure1.members and f & part2 in closure2.members for f in closure
    ) and closure.members <= both.members
    traces = trace(closure, part1) == closure1 and trace(closure, part2) == closure2

    report = SplitTheoremReport(
        part1=part1,
        part2=part2,
        crossing=crossing,
        closure=closure,
        closure1=closure1,
        closure2=closure2,
        item_i=_status(True, item_i),
        item_ii=_status(not crossing, closure == both),
        item_iii=_status(all(e.body <= part1 for e in crossing), traces),
        item_iv=_status(all(e.body <= part2 for e in crossing), traces),
    )
    if report.violations:
        log.warning("Split theorem violated for items %s", report.violations)
    return report


@dataclass(frozen=True)
class ClosureNode:
    """Node of a factor tree annotated with the closure system of its leaf ground set."""

    node: Node
    closure: ClosureSystem
    left: "ClosureNode | None" = None
    right: "ClosureNode | None" = None

    def factors(self) -> list[ClosureSystem]:
        """Return the closure systems of the leaves (the H-factors), left to right."""
        result, stack = [], [self]
        while stack:
            current = stack.pop()
            if current.left is None:
                result.append(current.closure)
            else:
                stack.append(current.right)
                stack.append(current.left)
        return result


@timing
def decompose_closure(
    hypergraph: Dihypergraph, limit: int = DEFAULT_GROUND_SET_LIMIT
) -> ClosureNode:
    """Annotate every node of the factor tree with the closure system of its subhypergraph."""
    if len(hypergraph.vertices) > limit:
        raise GroundSetTooLarge(
            f"ground set of {len(hypergraph.vertices)} vertices exceeds the limit of {limit}"
        )

    stack: list[tuple[Node, bool]] = [(build_factor_tree(hypergraph), False)]
    results: list[ClosureNode] = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Internal) and not expanded:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
            continue
        closure = enumerate_closed_sets(induced(hypergraph, leaf_vertices(node)), limit)
        if isinstance(node, Internal):
            right = results.pop()
            left = results.pop()
            results.append(ClosureNode(node, closure, left, right))
        else:
            results.append(ClosureNode(node, closure))
    return results.pop()


def factor_product(tree: ClosureNode) -> ClosureSystem:
    """Return the direct product of the H-factor closure systems of an annotated factor tree."""
    return iterated_product(tree.factors())


@dataclass(frozen=True)
class CorollaryReport:
    """F_H checked against the direct product of its H-factor closure systems."""

    closure: ClosureSystem
    factors: tuple[ClosureSystem, ...]
    product: ClosureSystem
    check: LatticeCheck

    def __bool__(self):
        return bool(self.check)


@timing
def check_corollary(
    hypergraph: Dihypergraph, limit: int = DEFAULT_GROUND_SET_LIMIT
) -> CorollaryReport:
    """Check that F_H is a meet-sublattice of the product of its H-factor closure systems."""
    tree = decompose_closure(hypergraph, limit)
    factors = tuple(tree.factors())
    combined = factor_product(tree)
    check = is_meet_sublattice(tree.closure, combined)
    if not check:
        log.warning("F_H is not a meet-sublattice of its factor product: %s", check.reason)
    return CorollaryReport(tree.closure, factors, combined, check)
