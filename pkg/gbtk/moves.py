"""Discrete loops in ordered configuration spaces of graphs.

Particles sit on vertices of a (subdivided) graph and move one whole edge at
a time. A move is legal when no other particle occupies either endpoint of
the edge, so every move sequence stays in Conf_k(Γ).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .config import Limits, load_limits
from .errors import GraphError, MoveError, ResourceLimitError
from .graph import (
    Graph,
    StarEmbedding,
    closed_star,
    closed_stars_disjoint,
    essential_vertices,
    star_embedding,
    valence,
)
from .partitions import BinaryWPartition
from .words import ThetaWord


_MOVE_LINE = re.compile(r"^p(\d+):\s*(\S+)\s*->\s*(\S+)\s*\[(\S+)\]$")

# (role, source arm, target arm); role 0 is the first pair coordinate
_EPSILON_SEGMENTS: Tuple[Tuple[int, int, int], ...] = (
    (1, 2, 3),
    (0, 1, 2),
    (1, 3, 1),
    (0, 2, 3),
    (1, 1, 2),
    (0, 3, 1),
)


@dataclass(frozen=True)
class DiscreteConfiguration:
    """Positions of particles 1..k; index ``i`` holds particle ``i + 1``."""

    positions: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.positions)) != len(self.positions):
            raise MoveError(f"particles must occupy distinct vertices: {list(self.positions)}")

    @classmethod
    def of(cls, *positions: str) -> "DiscreteConfiguration":
        return cls(tuple(positions))

    @property
    def k(self) -> int:
        return len(self.positions)

    def position(self, particle: int) -> str:
        if not 1 <= particle <= self.k:
            raise MoveError(f"particle {particle} out of range 1..{self.k}")
        return self.positions[particle - 1]

    def occupant(self, vertex: str) -> Optional[int]:
        try:
            return self.positions.index(vertex) + 1
        except ValueError:
            return None

    def moved(self, particle: int, target: str) -> "DiscreteConfiguration":
        positions = list(self.positions)
        positions[particle - 1] = target
        return DiscreteConfiguration(tuple(positions))


@dataclass(frozen=True)
class Move:
    particle: int
    source: str
    target: str
    edge: str

    def reversed(self) -> "Move":
        return Move(self.particle, self.target, self.source, self.edge)

    def __str__(self) -> str:
        return f"p{self.particle}: {self.source} -> {self.target} [{self.edge}]"

    @classmethod
    def parse(cls, line: str) -> "Move":
        match = _MOVE_LINE.match(line.strip())
        if match is None:
            raise MoveError(f"cannot parse move {line!r}")
        return cls(int(match.group(1)), match.group(2), match.group(3), match.group(4))


@dataclass(frozen=True)
class LoopSpec:
    base: DiscreteConfiguration
    moves: Tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def to_text(self) -> str:
        return "\n".join(str(mv) for mv in self.moves)


@dataclass(frozen=True)
class PhiLambda:
    """Per-vertex ε loops sharing the base configuration φ_λ(1)."""

    base: DiscreteConfiguration
    loops: Dict[str, LoopSpec] = field(default_factory=dict)

    def concatenated(self, order: Optional[Sequence[str]] = None) -> LoopSpec:
        order = list(order) if order is not None else list(self.loops)
        if sorted(order) != sorted(self.loops):
            raise MoveError(f"concatenation order {order} does not list each vertex once")
        return concatenate([self.loops[v] for v in order])


def apply(g: Graph, c: DiscreteConfiguration, mv: Move) -> DiscreteConfiguration:
    """Configuration after ``mv``; raises MoveError if the move is illegal."""
    if mv.source == mv.target:
        raise MoveError(f"{mv}: source and target coincide")
    try:
        edge = g.edge(mv.edge)
    except GraphError as exc:
        raise MoveError(f"{mv}: {exc}") from exc
    if set(edge.ends) != {mv.source, mv.target}:
        raise MoveError(f"{mv}: edge {mv.edge} joins {edge.ends[0]} and {edge.ends[1]}")
    if c.position(mv.particle) != mv.source:
        raise MoveError(f"{mv}: particle {mv.particle} is at {c.position(mv.particle)}")
    blocker = c.occupant(mv.target)
    if blocker is not None:
        raise MoveError(f"{mv}: collision with particle {blocker} at {mv.target}")
    return c.moved(mv.particle, mv.target)


def replay(g: Graph, loop: LoopSpec) -> List[DiscreteConfiguration]:
    """Every configuration visited, starting with the base."""
    states = [loop.base]
    for mv in loop.moves:
        states.append(apply(g, states[-1], mv))
    return states


def validate_loop(g: Graph, loop: LoopSpec) -> List[DiscreteConfiguration]:
    states = replay(g, loop)
    if states[-1] != loop.base:
        raise MoveError(
            f"loop does not close: ends at {list(states[-1].positions)}, "
            f"base is {list(loop.base.positions)}"
        )
    return states


def in_local_subspace(g: Graph, loop: LoopSpec, w: str) -> bool:
    """True when at most one particle is in the open star of ``w`` at every instant.

    A particle is in the open star while it sits at ``w`` or traverses an edge at ``w``.
    """
    if not g.has_vertex(w):
        raise GraphError(f"unknown vertex {w!r}")
    states = replay(g, loop)
    for state in states:
        if sum(1 for p in state.positions if p == w) > 1:
            return False
    for state, mv in zip(states, loop.moves):
        inside = 1 if w in g.edge(mv.edge).ends else 0
        inside += sum(1 for i, p in enumerate(state.positions, 1) if p == w and i != mv.particle)
        if inside > 1:
            return False
    return True


def _check_pair(pair: Tuple[int, int], k: int) -> Tuple[int, int]:
    a, b = int(pair[0]), int(pair[1])
    if a == b:
        raise MoveError(f"pair indices must differ, got ({a},{b})")
    for p in (a, b):
        if not 1 <= p <= k:
            raise MoveError(f"particle {p} out of range 1..{k}")
    return a, b


def build_epsilon(
    g: Graph,
    emb: StarEmbedding,
    pair: Tuple[int, int],
    base: DiscreteConfiguration,
) -> LoopSpec:
    """Twelve-move ε loop exchanging ``pair`` around ``emb.center``.

    ``pair[0]`` starts on arm 1 and ``pair[1]`` on arm 2; each of the six
    segments carries one of them from an arm tip through the center to
    another arm tip.
    """
    a, b = _check_pair(pair, base.k)
    if base.position(a) != emb.boundary[0] or base.position(b) != emb.boundary[1]:
        raise MoveError(
            f"particles {a},{b} must start at {emb.boundary[0]},{emb.boundary[1]}"
        )
    star, _ = closed_star(g, emb.center)
    for particle, vertex in enumerate(base.positions, 1):
        if particle not in (a, b) and vertex in star:
            raise MoveError(
                f"particle {particle} at {vertex} lies in the closed star of {emb.center}"
            )

    roles = (a, b)
    edges = emb.arm_edges
    moves: List[Move] = []
    for role, source_arm, target_arm in _EPSILON_SEGMENTS:
        particle = roles[role]
        moves.append(Move(particle, emb.boundary[source_arm - 1], emb.center, edges[source_arm - 1]))
        moves.append(Move(particle, emb.center, emb.boundary[target_arm - 1], edges[target_arm - 1]))
    loop = LoopSpec(base, tuple(moves))
    validate_loop(g, loop)
    return loop


def parking_configuration(
    g: Graph,
    count: int,
    avoid: Iterable[str] = (),
    occupied: Iterable[str] = (),
) -> Tuple[str, ...]:
    """``count`` non-essential vertices outside the closed stars of ``avoid``."""
    blocked: Set[str] = set(occupied)
    for v in avoid:
        blocked |= closed_star(g, v)[0]
    essential = set(essential_vertices(g))
    free = [v for v in g.vertices if v not in blocked and v not in essential]
    if len(free) < count:
        raise MoveError(f"only {len(free)} parking vertices available, {count} needed")
    return tuple(free[:count])


def epsilon_at(g: Graph, v: str, pair: Tuple[int, int], k: Optional[int] = None) -> LoopSpec:
    """ε loop at ``v`` for ``pair``, spectators parked away from the star of ``v``."""
    if k is None:
        k = max(pair)
    a, b = _check_pair(pair, k)
    emb = star_embedding(g, v)
    parked = iter(parking_configuration(g, k - 2, avoid=[v]))
    positions = []
    for particle in range(1, k + 1):
        if particle == a:
            positions.append(emb.boundary[0])
        elif particle == b:
            positions.append(emb.boundary[1])
        else:
            positions.append(next(parked))
    return build_epsilon(g, emb, (a, b), DiscreteConfiguration(tuple(positions)))


def build_phi_lambda(g: Graph, lam: BinaryWPartition) -> PhiLambda:
    """ε loops at every vertex of W, with λ(v) placed on the first two arms at v."""
    W = lam.vertices
    for i, v in enumerate(W):
        for w in W[i + 1:]:
            if not closed_stars_disjoint(g, v, w):
                raise GraphError(f"closed stars of {v!r} and {w!r} overlap; apply paper_subdivide first")
    embeddings = {v: star_embedding(g, v) for v in W}
    positions: List[Optional[str]] = [None] * lam.k
    for v in W:
        a, b = lam[v]
        positions[a - 1] = embeddings[v].boundary[0]
        positions[b - 1] = embeddings[v].boundary[1]
    if any(p is None for p in positions):
        raise MoveError(f"partition does not cover particles 1..{lam.k}")
    base = DiscreteConfiguration(tuple(p for p in positions if p is not None))
    loops = {v: build_epsilon(g, embeddings[v], lam[v], base) for v in W}
    return PhiLambda(base, loops)


def _adjacency(g: Graph) -> Dict[str, List[Tuple[str, str]]]:
    out: Dict[str, List[Tuple[str, str]]] = {v: [] for v in g.vertices}
    for edge in g.edges:
        if edge.is_loop:
            continue
        a, b = edge.ends
        out[a].append((b, edge.id))
        out[b].append((a, edge.id))
    return out


def build_base_path(
    g: Graph,
    source: DiscreteConfiguration,
    target: DiscreteConfiguration,
    limits: Optional[Limits] = None,
) -> Tuple[Move, ...]:
    """Shortest move sequence from ``source`` to ``target`` (breadth-first search)."""
    if source.k != target.k:
        raise MoveError(f"particle counts differ: {source.k} vs {target.k}")
    for c in (source, target):
        for v in c.positions:
            if not g.has_vertex(v):
                raise MoveError(f"configuration names unknown vertex {v!r}")
    if limits is None:
        limits = load_limits()
    adjacency = _adjacency(g)
    start, goal = source.positions, target.positions
    parent: Dict[Tuple[str, ...], Tuple[Tuple[str, ...], Move]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        occupied = set(state)
        for i, here in enumerate(state):
            for there, eid in adjacency[here]:
                if there in occupied:
                    continue
                nxt = state[:i] + (there,) + state[i + 1:]
                if nxt in seen:
                    continue
                seen.add(nxt)
                if len(seen) > limits.state_cap:
                    raise ResourceLimitError(
                        f"base path search exceeded {limits.state_cap} states (GBT_STATE_CAP)"
                    )
                parent[nxt] = (state, Move(i + 1, here, there, eid))
                queue.append(nxt)
    if goal not in seen:
        raise MoveError(
            f"{list(goal)} is unreachable from {list(start)}; the graph may need more subdivision"
        )
    path: List[Move] = []
    state = goal
    while state != start:
        state, mv = parent[state]
        path.append(mv)
    path.reverse()
    return tuple(path)


def reverse_moves(path: Sequence[Move]) -> Tuple[Move, ...]:
    return tuple(mv.reversed() for mv in reversed(path))


def concatenate(loops: Sequence[LoopSpec]) -> LoopSpec:
    if not loops:
        raise MoveError("nothing to concatenate")
    base = loops[0].base
    for loop in loops[1:]:
        if loop.base != base:
            raise MoveError("loops to concatenate must share a base configuration")
    return LoopSpec(base, tuple(mv for loop in loops for mv in loop.moves))


def conjugate(
    g: Graph,
    loop: LoopSpec,
    path: Sequence[Move],
    start: DiscreteConfiguration,
) -> LoopSpec:
    """``path · loop · path⁻¹`` based at ``start``; ``path`` must end at ``loop.base``."""
    end = replay(g, LoopSpec(start, tuple(path)))[-1]
    if end != loop.base:
        raise MoveError("conjugating path does not end at the loop's base configuration")
    return LoopSpec(start, tuple(path) + loop.moves + reverse_moves(path))


def _half_edge_index(g: Graph, order: Mapping[Tuple[str, int], int], eid: str, w: str) -> int:
    edge = g.edge(eid)
    if edge.is_loop:
        raise MoveError(f"loop {eid} at {w!r}; apply paper_subdivide first")
    side = 0 if edge.ends[0] == w else 1
    return order[(eid, side)]


def q_project(g: Graph, loop: LoopSpec, tracked: Tuple[int, int], w: str) -> ThetaWord:
    """Word in π₁(Θ_{d(w)}) traced by the tracked particles through ``w``.

    A tracked particle entering ``w`` along half-edge ``i`` and leaving along
    half-edge ``j`` (1-based positions in ``edge_order[w]``) contributes γ(i, j).
    """
    n = valence(g, w)
    if n < 3:
        raise GraphError(f"vertex {w!r} is not essential")
    a, b = _check_pair(tracked, loop.base.k)
    for p in (a, b):
        if loop.base.position(p) == w:
            raise MoveError(f"tracked particle {p} sits at {w!r} in the base configuration")
    order = {h: i for i, h in enumerate(g.edge_order[w], 1)}
    entered: Dict[int, int] = {}
    letters = []
    for mv in loop.moves:
        if mv.particle not in (a, b):
            continue
        if mv.target == w:
            if entered:
                raise MoveError(f"two tracked particles in the open star of {w!r}")
            entered[mv.particle] = _half_edge_index(g, order, mv.edge, w)
        elif mv.source == w:
            if mv.particle not in entered:
                raise MoveError(f"{mv}: particle leaves {w!r} without entering it")
            i = entered.pop(mv.particle)
            j = _half_edge_index(g, order, mv.edge, w)
            if i != j:
                letters.append((i, j, 1))
    if entered:
        raise MoveError(f"loop ends with a tracked particle at {w!r}")
    return ThetaWord(n, tuple(letters))
