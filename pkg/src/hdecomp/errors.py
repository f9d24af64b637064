"""This module contains the exceptions raised by the library and the command-line interface."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Location:
    """Position in an input document (1-based line and column)."""

    line: int
    column: int

    def __str__(self):
        return f"line {self.line}, column {self.column}"


class DihypergraphError(ValueError):
    """Base class for all errors raised by hdecomp."""

    def __init__(self, message: str, location: Location | None = None):
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self):
        if self.location is None:
            return self.message
        return f"{self.location}: {self.message}"


class InputSyntaxError(DihypergraphError):
    """Malformed input document."""


class EmptyVertexSet(DihypergraphError):
    """A dihypergraph (or a requested vertex subset) has no vertices."""


class EmptyBody(DihypergraphError):
    """An edge has an empty body."""


class HeadInBody(DihypergraphError):
    """The head of an edge is contained in its body."""


class UnknownVertex(DihypergraphError):
    """A vertex is referenced that is not part of the dihypergraph."""


class NotABipartition(DihypergraphError):
    """Two vertex sets do not form a non-trivial bipartition of the ground set."""


class NotASplit(DihypergraphError):
    """A bipartition is not a split (some body meets both parts)."""


class TooFewVertices(DihypergraphError):
    """The operation needs at least two vertices."""


class InvalidTree(DihypergraphError):
    """A tree is not a valid H-tree of the given dihypergraph."""


class InconsistentTree(DihypergraphError):
    """A tree repeats leaves or edges and cannot describe a dihypergraph."""


class OverlappingGrounds(DihypergraphError):
    """The ground sets of two closure systems are not disjoint."""


class NotAMember(DihypergraphError):
    """A set is not a closed set of the closure system."""


class NotAClosureSystem(DihypergraphError):
    """A family misses its ground set or is not closed under intersection."""


class SizeLimitExceeded(DihypergraphError):
    """Base class for errors raised when an exponential computation would be too large."""


class GroundSetTooLarge(SizeLimitExceeded):
    """Closed-set enumeration was requested on a ground set beyond the configured limit."""


class InstanceTooLarge(SizeLimitExceeded):
    """A brute-force oracle was called on an instance beyond its hard limit."""
