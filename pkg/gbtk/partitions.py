"""Binary W-partitions of {1..k}."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import PartitionError


Pair = Tuple[int, int]

_BLOCK = re.compile(r"^(.+):\{\s*(\d+)\s*,\s*(\d+)\s*\}$")


@dataclass(frozen=True)
class BinaryWPartition:
    """Assigns each vertex of W a 2-element block; the blocks partition {1..2|W|}.

    ``vertices`` keeps the order of W; ``pairs[i]`` is the sorted block of
    ``vertices[i]``.
    """

    vertices: Tuple[str, ...]
    pairs: Tuple[Pair, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise PartitionError("W must contain at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise PartitionError(f"W lists a vertex twice: {list(self.vertices)}")
        if len(self.pairs) != len(self.vertices):
            raise PartitionError("every vertex of W needs exactly one block")
        for pair in self.pairs:
            if len(pair) != 2 or pair[0] >= pair[1]:
                raise PartitionError(f"block {pair} must hold two distinct indices in increasing order")
        used = sorted(i for pair in self.pairs for i in pair)
        if used != list(range(1, 2 * len(self.vertices) + 1)):
            raise PartitionError(
                f"blocks {list(self.pairs)} do not partition 1..{2 * len(self.vertices)}"
            )

    @classmethod
    def from_mapping(cls, assignment: Mapping[str, Iterable[int]]) -> "BinaryWPartition":
        vertices: List[str] = []
        pairs: List[Pair] = []
        for v, block in assignment.items():
            items = sorted(int(i) for i in block)
            if len(items) != 2:
                raise PartitionError(f"block of {v!r} must have two elements, got {items}")
            vertices.append(str(v))
            pairs.append((items[0], items[1]))
        return cls(tuple(vertices), tuple(pairs))

    @property
    def k(self) -> int:
        return 2 * len(self.vertices)

    def __getitem__(self, v: str) -> Pair:
        try:
            return self.pairs[self.vertices.index(v)]
        except ValueError:
            raise PartitionError(f"{v!r} is not in W") from None

    def items(self) -> List[Tuple[str, Pair]]:
        return list(zip(self.vertices, self.pairs))

    def as_dict(self) -> Dict[str, List[int]]:
        return {v: list(pair) for v, pair in self.items()}

    def __str__(self) -> str:
        return format_partition(self)


def _check_parity(k: int, W: Sequence[str]) -> None:
    if k < 2 or k != 2 * len(W):
        raise PartitionError(f"binary W-partitions need k = 2|W|; got k={k}, |W|={len(W)}")


def enumerate_partitions(k: int, W: Sequence[str]) -> List[BinaryWPartition]:
    """All binary W-partitions of {1..k}, blocks chosen lexicographically along W."""
    W = tuple(W)
    _check_parity(k, W)
    out: List[BinaryWPartition] = []

    def extend(remaining: Tuple[int, ...], chosen: Tuple[Pair, ...]) -> None:
        if not remaining:
            out.append(BinaryWPartition(W, chosen))
            return
        for pair in combinations(remaining, 2):
            rest = tuple(i for i in remaining if i not in pair)
            extend(rest, chosen + (pair,))

    extend(tuple(range(1, k + 1)), ())
    return out


def check_compatible(lam: BinaryWPartition, mu: BinaryWPartition) -> None:
    if lam.vertices != mu.vertices:
        raise PartitionError(f"partitions index different W: {list(lam.vertices)} vs {list(mu.vertices)}")


def disjoint(lam: BinaryWPartition, mu: BinaryWPartition) -> bool:
    """True when no block of λ is a block of μ, at any vertices."""
    check_compatible(lam, mu)
    return not set(lam.pairs) & set(mu.pairs)


def witness_disjoint_pair(
    k: int, W: Sequence[str]
) -> Optional[Tuple[BinaryWPartition, BinaryWPartition]]:
    """λ = {1,2},{3,4},... and μ = {2,3},{4,5},...,{1,k}; None when |W| = 1."""
    W = tuple(W)
    _check_parity(k, W)
    d = len(W)
    if d == 1:
        return None
    lam_pairs = tuple((2 * i - 1, 2 * i) for i in range(1, d + 1))
    mu_pairs = tuple((2 * i, 2 * i + 1) for i in range(1, d)) + ((1, k),)
    return BinaryWPartition(W, lam_pairs), BinaryWPartition(W, mu_pairs)


def case_label(lam: BinaryWPartition, mu: BinaryWPartition, v: str, w: str) -> str:
    """Which case of the entry (v, w) applies: v≠w, λ=μ, overlap1 or disjoint."""
    if v != w:
        return "v≠w"
    shared = len(set(lam[v]) & set(mu[v]))
    if shared == 2:
        return "λ=μ"
    if shared == 1:
        return "overlap1"
    return "disjoint"


def format_partition(lam: BinaryWPartition) -> str:
    return " ".join(f"{v}:{{{a},{b}}}" for v, (a, b) in lam.items())


def parse_partition(text: str) -> BinaryWPartition:
    """Parse ``"u:{1,2} w:{3,4}"``."""
    assignment: Dict[str, Tuple[int, int]] = {}
    for token in re.split(r"\s+(?=[^\s,{}]+:\{)", text.strip()):
        match = _BLOCK.match(token.strip())
        if match is None:
            raise PartitionError(f"cannot parse partition block {token!r}")
        v = match.group(1)
        if v in assignment:
            raise PartitionError(f"vertex {v!r} appears twice")
        assignment[v] = (int(match.group(2)), int(match.group(3)))
    if not assignment:
        raise PartitionError("empty partition")
    return BinaryWPartition.from_mapping(assignment)
