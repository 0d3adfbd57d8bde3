"""Exception types shared across gbtk."""

from __future__ import annotations


class GraphError(ValueError):
    """Invalid graph data or a violated graph precondition."""


class GraphFormatError(GraphError):
    """Graph file could not be parsed."""


class MoveError(ValueError):
    """Invalid particle move, loop, or q-map precondition."""


class PartitionError(ValueError):
    """Malformed binary W-partition or mismatched partitions."""


class ResourceLimitError(RuntimeError):
    """A configured resource guard was exceeded."""
