"""Finite multigraphs with half-edge orderings, subdivisions, and star data."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from .errors import GraphError


HalfEdge = Tuple[str, int]
"""An edge id together with the end (0 or 1) it is attached at."""

EdgeLike = Union["Edge", Tuple[str, str, str], Mapping[str, object]]


@dataclass(frozen=True)
class Edge:
    id: str
    ends: Tuple[str, str]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Graph:
    """Finite multigraph; loops and parallel edges are allowed.

    ``edge_order[v]`` lists the half-edges at ``v``; a loop at ``v``
    contributes both ``(id, 0)`` and ``(id, 1)``.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    edge_order: Dict[str, Tuple[HalfEdge, ...]]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("vertex names must be unique")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError("edge ids must be unique")
        known = set(self.vertices)
        for edge in self.edges:
            for end in edge.ends:
                if end not in known:
                    raise GraphError(f"edge {edge.id} names unknown vertex {end!r}")
        if set(self.edge_order) != known:
            missing = sorted(known - set(self.edge_order))
            extra = sorted(set(self.edge_order) - known)
            raise GraphError(f"edge_order must cover every vertex (missing {missing}, unknown {extra})")
        for v in self.vertices:
            expected = Counter(_default_half_edges(self.edges, v))
            if Counter(self.edge_order[v]) != expected:
                raise GraphError(f"edge_order at {v!r} is not a permutation of its half-edges")

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[EdgeLike],
        edge_order: Optional[Mapping[str, Sequence[str]]] = None,
    ) -> "Graph":
        """Build a graph; ``edge_order`` lists edge ids per vertex and may be partial.

        A loop id is listed twice at its vertex; the first occurrence is end 0.
        Vertices without an explicit order use declaration order.
        """
        vertex_tuple = tuple(str(v) for v in vertices)
        edge_tuple = tuple(_coerce_edge(e) for e in edges)
        by_id = {e.id: e for e in edge_tuple}
        orders: Dict[str, Tuple[HalfEdge, ...]] = {}
        for v in vertex_tuple:
            orders[v] = tuple(_default_half_edges(edge_tuple, v))
        for v, ids in (edge_order or {}).items():
            if v not in orders:
                raise GraphError(f"edge_order names unknown vertex {v!r}")
            seen: Counter = Counter()
            half_edges: List[HalfEdge] = []
            for eid in ids:
                edge = by_id.get(eid)
                if edge is None:
                    raise GraphError(f"edge_order at {v!r} names unknown edge {eid!r}")
                sides = [s for s in (0, 1) if edge.ends[s] == v]
                if seen[eid] >= len(sides):
                    raise GraphError(f"edge {eid!r} is not incident to {v!r} that often")
                half_edges.append((eid, sides[seen[eid]]))
                seen[eid] += 1
            orders[v] = tuple(half_edges)
        return cls(vertex_tuple, edge_tuple, orders)

    @cached_property
    def _edges_by_id(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, eid: str) -> Edge:
        try:
            return self._edges_by_id[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self.edge_order


@dataclass(frozen=True)
class StarEmbedding:
    """Image of the three-armed star at an essential vertex."""

    center: str
    arms: Tuple[HalfEdge, HalfEdge, HalfEdge]
    boundary: Tuple[str, str, str]

    @property
    def arm_edges(self) -> Tuple[str, str, str]:
        return (self.arms[0][0], self.arms[1][0], self.arms[2][0])


def _coerce_edge(raw: EdgeLike) -> Edge:
    if isinstance(raw, Edge):
        return raw
    if isinstance(raw, Mapping):
        ends = raw.get("ends")
        if "id" not in raw or not isinstance(ends, (list, tuple)) or len(ends) != 2:
            raise GraphError(f"edge record needs 'id' and two 'ends': {dict(raw)!r}")
        return Edge(str(raw["id"]), (str(ends[0]), str(ends[1])))
    eid, a, b = raw
    return Edge(str(eid), (str(a), str(b)))


def _default_half_edges(edges: Iterable[Edge], v: str) -> List[HalfEdge]:
    out: List[HalfEdge] = []
    for edge in edges:
        for side in (0, 1):
            if edge.ends[side] == v:
                out.append((edge.id, side))
    return out


def _require_vertex(g: Graph, v: str) -> None:
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex {v!r}")


def valence(g: Graph, v: str) -> int:
    """Number of half-edges at ``v``; a loop counts twice."""
    _require_vertex(g, v)
    return len(g.edge_order[v])


def essential_vertices(g: Graph) -> List[str]:
    """Vertices of valence at least 3, in declaration order."""
    return [v for v in g.vertices if len(g.edge_order[v]) >= 3]


def essential_count(g: Graph) -> int:
    """m(Γ): the number of essential vertices."""
    return len(essential_vertices(g))


def far_end(g: Graph, half_edge: HalfEdge) -> str:
    eid, side = half_edge
    return g.edge(eid).ends[1 - side]


def neighbors(g: Graph, v: str) -> List[str]:
    """Distinct far ends of the half-edges at ``v``, in edge order."""
    _require_vertex(g, v)
    out: List[str] = []
    for half_edge in g.edge_order[v]:
        other = far_end(g, half_edge)
        if other not in out:
            out.append(other)
    return out


def closed_star(g: Graph, v: str) -> Tuple[Set[str], Set[str]]:
    """Vertex and edge sets of the closed star of ``v``."""
    _require_vertex(g, v)
    vertex_set = {v, *neighbors(g, v)}
    edge_set = {eid for eid, _side in g.edge_order[v]}
    return vertex_set, edge_set


def to_networkx(g: Graph) -> nx.MultiGraph:
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(g.vertices)
    for edge in g.edges:
        nxg.add_edge(edge.ends[0], edge.ends[1], key=edge.id)
    return nxg


def is_connected(g: Graph) -> bool:
    if not g.vertices:
        return False
    return nx.is_connected(to_networkx(g))


def first_betti(g: Graph) -> int:
    """E - V + C."""
    components = nx.number_connected_components(to_networkx(g)) if g.vertices else 0
    return len(g.edges) - len(g.vertices) + components


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("graph is disconnected")


def subdivide_edges(g: Graph, pieces: Mapping[str, int]) -> Graph:
    """Split each listed edge into the given number of pieces.

    Edge ``e`` split into ``n`` pieces yields vertices ``e#1 .. e#(n-1)`` and
    edges ``e/1 .. e/n`` running from ``ends[0]`` to ``ends[1]``. Original
    vertices keep their half-edge order.
    """
    taken = set(g.vertices) | {e.id for e in g.edges}
    vertices: List[str] = list(g.vertices)
    edges: List[Edge] = []
    replacement: Dict[HalfEdge, HalfEdge] = {}
    new_orders: Dict[str, Tuple[HalfEdge, ...]] = {}

    for edge in g.edges:
        n = int(pieces.get(edge.id, 1))
        if n <= 1:
            edges.append(edge)
            continue
        inner = [f"{edge.id}#{i}" for i in range(1, n)]
        ids = [f"{edge.id}/{i}" for i in range(1, n + 1)]
        clash = taken.intersection(inner + ids)
        if clash:
            raise GraphError(f"subdivision names already in use: {sorted(clash)}")
        taken.update(inner + ids)
        chain = [edge.ends[0], *inner, edge.ends[1]]
        vertices.extend(inner)
        for i, eid in enumerate(ids):
            edges.append(Edge(eid, (chain[i], chain[i + 1])))
        replacement[(edge.id, 0)] = (ids[0], 0)
        replacement[(edge.id, 1)] = (ids[-1], 1)
        for i, name in enumerate(inner):
            new_orders[name] = ((ids[i], 1), (ids[i + 1], 0))

    orders = {
        v: tuple(replacement.get(h, h) for h in g.edge_order[v]) for v in g.vertices
    }
    orders.update(new_orders)
    return Graph(tuple(vertices), tuple(edges), orders)


def paper_subdivide(g: Graph) -> Graph:
    """Subdivide so essential vertices have contractible open stars and disjoint closed stars.

    Loops at essential vertices and edges joining two essential vertices are
    split into three pieces. Parallel edges at an essential vertex, and edges
    from an essential vertex to a vertex adjacent to another essential vertex,
    are split into two. The result is a fixed point of this function.
    """
    _require_connected(g)
    essential = set(essential_vertices(g))
    families = Counter(frozenset(e.ends) for e in g.edges if not e.is_loop)
    adjacent_essentials: Dict[str, Set[str]] = {v: set() for v in g.vertices}
    for edge in g.edges:
        a, b = edge.ends
        if b in essential:
            adjacent_essentials[a].add(b)
        if a in essential:
            adjacent_essentials[b].add(a)

    pieces: Dict[str, int] = {}
    for edge in g.edges:
        a, b = edge.ends
        if a not in essential and b not in essential:
            continue
        if edge.is_loop or (a in essential and b in essential):
            pieces[edge.id] = 3
        elif families[frozenset(edge.ends)] > 1:
            pieces[edge.id] = 2
        else:
            v, x = (a, b) if a in essential else (b, a)
            if adjacent_essentials[x] - {v}:
                pieces[edge.id] = 2
    if not pieces:
        return g
    return subdivide_edges(g, pieces)


def abrams_subdivide(g: Graph, k: int) -> Graph:
    """Split every edge into ``k + 1`` pieces."""
    if k < 1:
        raise GraphError(f"particle count must be at least 1, got {k}")
    _require_connected(g)
    return subdivide_edges(g, {e.id: k + 1 for e in g.edges})


def star_embedding(g: Graph, v: str) -> StarEmbedding:
    """Arms are the first three half-edges of ``edge_order[v]``."""
    if valence(g, v) < 3:
        raise GraphError(f"vertex {v!r} is not essential")
    arms = g.edge_order[v][:3]
    boundary = tuple(far_end(g, h) for h in arms)
    if v in boundary or len(set(boundary)) != 3:
        raise GraphError(
            f"arms at {v!r} do not end at three distinct vertices; apply paper_subdivide first"
        )
    return StarEmbedding(v, (arms[0], arms[1], arms[2]), (boundary[0], boundary[1], boundary[2]))


def closed_stars_disjoint(g: Graph, v: str, w: str) -> bool:
    if v == w:
        raise GraphError("closed star disjointness needs two distinct vertices")
    star_v, _ = closed_star(g, v)
    star_w, _ = closed_star(g, w)
    return not (star_v & star_w)


def _girth(g: Graph) -> Optional[int]:
    if any(e.is_loop for e in g.edges):
        return 1
    if len({frozenset(e.ends) for e in g.edges}) < len(g.edges):
        return 2
    girth = nx.girth(nx.Graph(to_networkx(g)))
    return None if girth == float("inf") else int(girth)


def subdivision_check(g: Graph, k: int) -> List[str]:
    """Problems preventing the discrete model from representing k particles.

    Uses the conservative form of Abrams' conditions: paths between distinct
    vertices of valence other than 2, and cycles, need at least ``k + 1`` edges.
    """
    problems: List[str] = []
    girth = _girth(g)
    if girth is not None and girth < k + 1:
        problems.append(f"a cycle has {girth} edges; at least {k + 1} needed")
    special = [v for v in g.vertices if len(g.edge_order[v]) != 2]
    nxg = to_networkx(g)
    for i, v in enumerate(special):
        lengths = nx.single_source_shortest_path_length(nxg, v, cutoff=k)
        for w in special[i + 1:]:
            if w in lengths:
                problems.append(
                    f"path {v!r} to {w!r} has {lengths[w]} edges; at least {k + 1} needed"
                )
    return problems
