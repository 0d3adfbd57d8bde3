"""Discretized configuration complexes of graphs.

A cell is a choice of k graph cells (vertices or edges) with pairwise
disjoint closures; its dimension is the number of edges chosen. Unordered
cells are sorted tuples of cell indices, ordered cells are tuples indexed by
particle. Graph cells are indexed vertices first, then edges, both in
declaration order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Optional, Set, Tuple

import numpy as np
from scipy import sparse
from tqdm import tqdm

from ..config import Limits, load_limits
from ..errors import GraphError, ResourceLimitError
from ..graph import Graph, abrams_subdivide, essential_count, subdivision_check
from .rank import matrix_rank


Cell = Tuple[int, ...]

CHECK_MODES = ("off", "warn", "error")

TRANSFER_NOTE = (
    "rational homology of the unordered configuration space injects into that of the "
    "ordered one (transfer for the free symmetric group action), so b_d > 0 persists"
)


@dataclass(frozen=True)
class BettiVector:
    values: Tuple[int, ...]
    coefficients: str = "Q"

    @property
    def preview(self) -> bool:
        return self.coefficients != "Q"

    def alternating_sum(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.values))

    def to_dict(self) -> Dict[str, object]:
        return {"coefficients": self.coefficients, "preview": self.preview, "values": list(self.values)}


@dataclass
class CubeComplex:
    graph: Graph
    k: int
    ordered: bool
    cells: List[List[Cell]]
    boundaries: Dict[int, sparse.csc_matrix]
    truncated: bool = False
    subdivision_problems: List[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    @property
    def cell_counts(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def boundary(self, d: int) -> Optional[sparse.csc_matrix]:
        return self.boundaries.get(d)


def _cell_names(g: Graph) -> List[str]:
    return list(g.vertices) + [e.id for e in g.edges]


def _closures(g: Graph) -> Tuple[List[Tuple[int, ...]], int]:
    index = {v: i for i, v in enumerate(g.vertices)}
    closures: List[Tuple[int, ...]] = [(i,) for i in range(len(g.vertices))]
    for edge in g.edges:
        closures.append((index[edge.ends[0]], index[edge.ends[1]]))
    return closures, len(g.vertices)


def _enumerate_unordered(
    closures: List[Tuple[int, ...]],
    n_vertices: int,
    k: int,
    top: int,
    cap: int,
) -> List[List[Cell]]:
    by_dim: List[List[Cell]] = [[] for _ in range(top + 1)]
    count = 0
    chosen: List[int] = []
    used: Set[int] = set()

    def extend(start: int, edges: int) -> None:
        nonlocal count
        if len(chosen) == k:
            count += 1
            if count > cap:
                raise ResourceLimitError(
                    f"configuration complex exceeds {cap} cells (GBT_CELL_CAP)"
                )
            by_dim[edges].append(tuple(chosen))
            return
        for c in range(start, len(closures)):
            is_edge = c >= n_vertices
            if is_edge and edges == top:
                break
            closure = closures[c]
            if used.intersection(closure):
                continue
            chosen.append(c)
            used.update(closure)
            extend(c + 1, edges + is_edge)
            chosen.pop()
            used.difference_update(closure)

    extend(0, 0)
    return by_dim


def _boundary_matrix(
    cells: List[Cell],
    faces: Dict[Cell, int],
    n_rows: int,
    closures: List[Tuple[int, ...]],
    n_vertices: int,
    ordered: bool,
    progress: bool,
    d: int,
) -> sparse.csc_matrix:
    rows: List[int] = []
    cols: List[int] = []
    vals: List[int] = []
    for j, cell in enumerate(tqdm(cells, desc=f"Boundary d={d}", unit="cell", disable=not progress)):
        t = 0
        for pos, c in enumerate(cell):
            if c < n_vertices:
                continue
            a, b = closures[c]
            sign = -1 if t % 2 else 1
            for vertex, s in ((b, sign), (a, -sign)):
                face = cell[:pos] + (vertex,) + cell[pos + 1:]
                if not ordered:
                    face = tuple(sorted(face))
                rows.append(faces[face])
                cols.append(j)
                vals.append(s)
            t += 1
    matrix = sparse.csc_matrix(
        (
            np.asarray(vals, dtype=np.int64),
            (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)),
        ),
        shape=(n_rows, len(cells)),
        dtype=np.int64,
    )
    matrix.eliminate_zeros()
    return matrix


def build(
    g: Graph,
    k: int,
    ordered: bool = False,
    max_dim: Optional[int] = None,
    check: str = "warn",
    limits: Optional[Limits] = None,
    progress: bool = True,
) -> CubeComplex:
    """Discretized (un)ordered configuration complex of ``k`` particles on ``g``.

    :param max_dim: Enumerate cells only up to this dimension.
    :param check: What to do when ``g`` is not subdivided enough for ``k``
                  particles: ``"off"``, ``"warn"`` or ``"error"``.
    """
    if k < 1:
        raise GraphError(f"particle count must be at least 1, got {k}")
    if check not in CHECK_MODES:
        raise ValueError(f"check must be one of {', '.join(CHECK_MODES)}, got {check!r}")
    if any(e.is_loop for e in g.edges):
        raise GraphError("loops cannot be cells; subdivide the graph first")
    if max_dim is not None and max_dim < 0:
        raise ValueError(f"max_dim must be non-negative, got {max_dim}")
    if limits is None:
        limits = load_limits()

    problems: List[str] = []
    if check != "off":
        problems = subdivision_check(g, k)
        if problems:
            message = f"graph is not subdivided enough for k={k}: {problems[0]}"
            if check == "error":
                raise GraphError(message)
            warnings.warn(message, UserWarning, stacklevel=2)

    full_top = min(k, len(g.edges))
    top = full_top if max_dim is None else min(max_dim, full_top)
    closures, n_vertices = _closures(g)
    by_dim = _enumerate_unordered(closures, n_vertices, k, top, limits.cell_cap)
    truncated = top < full_top
    if not truncated:
        while len(by_dim) > 1 and not by_dim[-1]:
            by_dim.pop()
        top = len(by_dim) - 1

    if ordered:
        total = 0
        expanded: List[List[Cell]] = []
        for cells in by_dim:
            out = sorted(p for cell in cells for p in permutations(cell))
            total += len(out)
            if total > limits.cell_cap:
                raise ResourceLimitError(
                    f"configuration complex exceeds {limits.cell_cap} cells (GBT_CELL_CAP)"
                )
            expanded.append(out)
        by_dim = expanded

    boundaries: Dict[int, sparse.csc_matrix] = {}
    for d in range(1, top + 1):
        faces = {cell: i for i, cell in enumerate(by_dim[d - 1])}
        boundaries[d] = _boundary_matrix(
            by_dim[d], faces, len(by_dim[d - 1]), closures, n_vertices, ordered, progress, d
        )

    return CubeComplex(
        graph=g,
        k=k,
        ordered=ordered,
        cells=by_dim,
        boundaries=boundaries,
        truncated=truncated,
        subdivision_problems=problems,
    )


def check_boundary(c: CubeComplex) -> bool:
    """True when ∂_{d-1} ∘ ∂_d vanishes in every degree."""
    for d in range(2, c.dimension + 1):
        product = (c.boundaries[d - 1] @ c.boundaries[d]).tocsc()
        product.eliminate_zeros()
        if product.nnz:
            return False
    return True


def euler_characteristic(c: CubeComplex) -> int:
    if c.truncated:
        raise ValueError("Euler characteristic needs the full complex; rebuild without max_dim")
    return sum((-1) ** d * n for d, n in enumerate(c.cell_counts))


def boundary_ranks(
    c: CubeComplex, prime: Optional[int] = None, progress: bool = False
) -> Dict[int, int]:
    """rank ∂_d for 1 ≤ d ≤ dimension, from the top down with clearing."""
    ranks: Dict[int, int] = {}
    cleared: Set[int] = set()
    for d in range(c.dimension, 0, -1):
        ranks[d], cleared = matrix_rank(
            c.boundaries[d], prime=prime, skip=cleared, progress=progress
        )
    return ranks


def betti(c: CubeComplex, prime: Optional[int] = None, progress: bool = False) -> BettiVector:
    """Betti numbers over Q, or over F_p as a labelled preview when ``prime`` is given.

    A truncated complex reports degrees below its top dimension only.
    """
    if prime is not None:
        warnings.warn(
            f"Betti numbers over F_{prime} are a preview; they do not certify rational homology",
            UserWarning,
            stacklevel=2,
        )
    ranks = boundary_ranks(c, prime=prime, progress=progress)
    counts = c.cell_counts
    last = c.dimension - 1 if c.truncated else c.dimension
    values = tuple(
        counts[d] - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(last + 1)
    )
    return BettiVector(values, "Q" if prime is None else f"F_{prime}")


@dataclass(frozen=True)
class NonvanishingCertificate:
    degree: int
    k: int
    betti: int
    cell_counts: Tuple[int, ...]
    ranks: Tuple[int, int]
    subdivision: str
    note: str = TRANSFER_NOTE

    def __bool__(self) -> bool:
        return self.betti > 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "degree": self.degree,
            "k": self.k,
            "betti": self.betti,
            "nonvanishing": self.betti > 0,
            "cell_counts": list(self.cell_counts),
            "ranks": {f"d{self.degree}": self.ranks[0], f"d{self.degree + 1}": self.ranks[1]},
            "subdivision": self.subdivision,
            "note": self.note,
        }


def certify_nonvanishing(
    g: Graph,
    d: int,
    limits: Optional[Limits] = None,
    progress: bool = True,
) -> NonvanishingCertificate:
    """Exact b_d of the unordered complex of 2d particles; truthy when positive."""
    m = essential_count(g)
    if not 2 <= d <= m:
        raise GraphError(f"degree must satisfy 2 <= d <= m(Γ)={m}, got d={d}")
    k = 2 * d
    sub = abrams_subdivide(g, k)
    c = build(sub, k, ordered=False, max_dim=d + 1, check="off", limits=limits, progress=progress)
    upper, cleared = matrix_rank(c.boundary(d + 1), progress=progress)
    lower, _ = matrix_rank(c.boundary(d), skip=cleared, progress=progress)
    value = c.cell_counts[d] - lower - upper
    return NonvanishingCertificate(
        degree=d,
        k=k,
        betti=value,
        cell_counts=c.cell_counts,
        ranks=(lower, upper),
        subdivision=f"every edge split into {k + 1} pieces",
    )


def export_chain_complex(c: CubeComplex) -> str:
    """Cells per dimension, then boundary triples ``row col value``."""
    lines = [
        "# gbtk chain complex",
        f"k {c.k}",
        f"ordered {str(c.ordered).lower()}",
        f"truncated {str(c.truncated).lower()}",
        "cells " + " ".join(str(n) for n in c.cell_counts),
    ]
    names = _cell_names(c.graph)
    for d, cells in enumerate(c.cells):
        lines.append(f"dim {d}")
        lines.extend(f"{i} ({', '.join(names[x] for x in cell)})" for i, cell in enumerate(cells))
    for d in range(1, c.dimension + 1):
        matrix = c.boundaries[d].tocoo()
        lines.append(f"boundary {d} {matrix.shape[0]} {matrix.shape[1]} {matrix.nnz}")
        triples = sorted(zip(matrix.col.tolist(), matrix.row.tolist(), matrix.data.tolist()))
        lines.extend(f"{row} {col} {value}" for col, row, value in triples)
    return "\n".join(lines) + "\n"
