"""Graph file input and output (JSON, UTF-8)."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Dict, List, Union

from .errors import GraphError, GraphFormatError
from .graph import Graph


PathLike = Union[str, os.PathLike]


def graph_from_dict(data: object) -> Graph:
    if not isinstance(data, dict):
        raise GraphFormatError("graph file must hold a JSON object")
    vertices = data.get("vertices")
    edges = data.get("edges")
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphFormatError("graph file needs 'vertices' and 'edges' lists")
    order = data.get("edge_order")
    if order is not None and not isinstance(order, dict):
        raise GraphFormatError("'edge_order' must map vertex names to edge id lists")
    return Graph.build(vertices, edges, order)


def graph_to_dict(g: Graph) -> Dict[str, object]:
    """Key order is vertices, edges, edge_order."""
    edges: List[Dict[str, object]] = [
        {"id": e.id, "ends": [e.ends[0], e.ends[1]]} for e in g.edges
    ]
    order = {v: [eid for eid, _side in g.edge_order[v]] for v in g.vertices}
    return {"vertices": list(g.vertices), "edges": edges, "edge_order": order}


def loads_graph(text: str, source: str = "<string>") -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(
            f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return graph_from_dict(data)
    except GraphError as exc:
        raise GraphFormatError(f"{source}: {exc}") from exc


def load_graph(path: PathLike) -> Graph:
    """Read a graph file; errors name the file and, for JSON syntax, the position."""
    path = Path(path)
    if not path.exists():
        raise GraphFormatError(f"Graph file not found: {path}")
    return loads_graph(path.read_text(encoding="utf-8"), source=str(path))


def dumps_graph(g: Graph, indent: Union[int, None] = None) -> str:
    return json.dumps(graph_to_dict(g), indent=indent, ensure_ascii=False)


def save_graph(g: Graph, out_path: PathLike) -> None:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(dumps_graph(g, indent=2) + "\n", encoding="utf-8")
