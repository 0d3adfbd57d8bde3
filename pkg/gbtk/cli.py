"""Command-line interface for gbtk."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from scipy.sparse import SparseEfficiencyWarning

from . import __version__
from .config import load_limits
from .errors import ResourceLimitError
from .graph import (
    Graph,
    abrams_subdivide,
    essential_vertices,
    first_betti,
    is_connected,
    paper_subdivide,
    subdivision_check,
    valence,
)
from .homology import betti, build, check_boundary, euler_characteristic, export_chain_complex
from .io import dumps_graph, load_graph, save_graph
from .moves import epsilon_at, q_project
from .partitions import BinaryWPartition, enumerate_partitions, parse_partition, witness_disjoint_pair
from .report_text import (
    render_analysis_text,
    render_epsilon_text,
    render_homology_text,
    render_report_text,
    render_summary_text,
    render_tc_text,
)
from .tc import TCQuery, evaluate, explain
from .verifier import verify_all, verify_proposition
from .words import abelianize, encode, format_basis_word, free_generator_decomposition, is_trivial


def _configure_warning_filters() -> None:
    warnings.filterwarnings("always", category=UserWarning, module=r"gbtk(\..*)?")
    warnings.filterwarnings("ignore", category=SparseEfficiencyWarning)


def _parse_pair(value: str) -> Tuple[int, int]:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected I,J but got {value!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers, got {value!r}") from None


def _parse_vertex_list(value: str) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1; status 2 is the resource guard."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, type=Path, help="YAML file with a 'limits' mapping.")
    common.add_argument("--pretty", action="store_true", help="Human-readable text instead of JSON.")
    common.add_argument("--no-progress", action="store_true", help="Disable progress bars.")

    parser = _ArgumentParser(prog="gbtk")
    parser.add_argument("--version", action="version", version=f"gbtk {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze_parser = subparsers.add_parser("analyze", parents=[common])
    analyze_parser.add_argument("graph", type=Path)

    subdivide_parser = subparsers.add_parser("subdivide", parents=[common])
    subdivide_parser.add_argument("graph", type=Path)
    mode = subdivide_parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--paper", action="store_true", help="Minimal subdivision for ε loops.")
    mode.add_argument("--abrams", type=int, default=None, metavar="K", help="Split every edge into K+1 pieces.")
    subdivide_parser.add_argument("--out", default=None, type=Path)

    epsilon_parser = subparsers.add_parser("epsilon", parents=[common])
    epsilon_parser.add_argument("graph", type=Path)
    epsilon_parser.add_argument("--vertex", required=True)
    epsilon_parser.add_argument("--pair", required=True, type=_parse_pair, metavar="I,J")
    epsilon_parser.add_argument("--k", type=int, default=None)

    verify_parser = subparsers.add_parser("verify", parents=[common])
    verify_parser.add_argument("graph", type=Path)
    verify_parser.add_argument("--k", required=True, type=int)
    verify_parser.add_argument("--W", dest="W", default=None, type=_parse_vertex_list, metavar="v1,v2,...")
    verify_parser.add_argument("--all-pairs", action="store_true")
    verify_parser.add_argument("--lambda", dest="lam", default=None, help='e.g. "u:{1,2} w:{3,4}"')
    verify_parser.add_argument("--mu", dest="mu", default=None)

    homology_parser = subparsers.add_parser("homology", parents=[common])
    homology_parser.add_argument("graph", type=Path)
    homology_parser.add_argument("--k", required=True, type=int)
    model = homology_parser.add_mutually_exclusive_group()
    model.add_argument("--ordered", dest="ordered", action="store_true")
    model.add_argument("--unordered", dest="ordered", action="store_false")
    homology_parser.add_argument("--max-dim", type=int, default=None)
    homology_parser.add_argument("--abrams", action="store_true", help="Subdivide for k particles first.")
    homology_parser.add_argument("--check", action="store_true", help="Fail on insufficient subdivision.")
    homology_parser.add_argument("--mod-p", type=int, default=None, metavar="P", help="Preview over F_P.")
    homology_parser.add_argument("--export", default=None, type=Path)

    tc_parser = subparsers.add_parser("tc", parents=[common])
    tc_parser.add_argument("graph", type=Path)
    tc_parser.add_argument("--k", required=True, type=int)
    tc_parser.add_argument("--r", required=True, type=int)
    tc_parser.add_argument("--certify", action="store_true")

    return parser.parse_args(argv)


def _load(path: Path) -> Tuple[Graph, str]:
    return load_graph(path), Path(path).stem


def _emit(args: argparse.Namespace, payload: Dict[str, object], render: Callable[[Dict[str, object]], str]) -> None:
    if getattr(args, "pretty", False):
        print(render(payload))
    else:
        print(json.dumps(payload, indent=2, ensure_ascii=False))


def _run_analyze(args: argparse.Namespace) -> int:
    try:
        g, graph_id = _load(args.graph)
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc
    essential = essential_vertices(g)
    payload: Dict[str, object] = {
        "graph": graph_id,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "connected": is_connected(g),
        "first_betti": first_betti(g),
        "m": len(essential),
        "essential": essential,
        "valences": {v: valence(g, v) for v in g.vertices},
        "version": __version__,
    }
    _emit(args, payload, render_analysis_text)
    return 0


def _run_subdivide(args: argparse.Namespace) -> int:
    try:
        g, _graph_id = _load(args.graph)
        sub = abrams_subdivide(g, args.abrams) if args.abrams is not None else paper_subdivide(g)
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc
    if args.out is None:
        print(dumps_graph(sub, indent=2))
        return 0
    save_graph(sub, args.out)
    print(json.dumps({"out": str(args.out), "vertices": len(sub.vertices), "edges": len(sub.edges)}))
    return 0


def _run_epsilon(args: argparse.Namespace) -> int:
    try:
        g, graph_id = _load(args.graph)
        g = paper_subdivide(g)
        loop = epsilon_at(g, args.vertex, args.pair, args.k)
        word = q_project(g, loop, args.pair, args.vertex)
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc
    payload: Dict[str, object] = {
        "graph": graph_id,
        "vertex": args.vertex,
        "pair": list(args.pair),
        "k": loop.base.k,
        "base": list(loop.base.positions),
        "moves": [str(mv) for mv in loop.moves],
        "word": str(word),
        "encoded": str(encode(word)),
        "basis_word": format_basis_word(free_generator_decomposition(word)),
        "abelianization": list(abelianize(word)),
        "trivial": is_trivial(word),
    }
    _emit(args, payload, render_epsilon_text)
    return 0


def _select_pair(args: argparse.Namespace, W: List[str]) -> Tuple[BinaryWPartition, BinaryWPartition]:
    if (args.lam is None) != (args.mu is None):
        raise ValueError("--lambda and --mu must be given together")
    if args.lam is not None:
        return parse_partition(args.lam), parse_partition(args.mu)
    witness = witness_disjoint_pair(args.k, W)
    if witness is None:
        only = enumerate_partitions(args.k, W)[0]
        return only, only
    return witness


def _run_verify(args: argparse.Namespace) -> int:
    progress = not args.no_progress
    try:
        limits = load_limits(args.config)
        g, graph_id = _load(args.graph)
        g = paper_subdivide(g)
        W = args.W if args.W else essential_vertices(g)[: args.k // 2]
        if args.k != 2 * len(W):
            raise ValueError(f"--k must equal 2|W| = {2 * len(W)}, got {args.k}")
        if args.all_pairs:
            summary = verify_all(g, W, graph_id=graph_id, limits=limits, progress=progress)
            _emit(args, summary.to_dict(), render_summary_text)
            return 0 if not summary.violations else 1
        lam, mu = _select_pair(args, W)
        report = verify_proposition(g, lam, mu, graph_id=graph_id, limits=limits)
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc
    _emit(args, report.to_dict(), render_report_text)
    return 0 if report.ok else 1


def _run_homology(args: argparse.Namespace) -> int:
    progress = not args.no_progress
    try:
        limits = load_limits(args.config)
        g, graph_id = _load(args.graph)
        if args.abrams:
            g = abrams_subdivide(g, args.k)
        complex_ = build(
            g,
            args.k,
            ordered=args.ordered,
            max_dim=args.max_dim,
            check="error" if args.check else "warn",
            limits=limits,
            progress=progress,
        )
        vector = betti(complex_, prime=args.mod_p, progress=progress)
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc
    if args.export is not None:
        args.export.parent.mkdir(parents=True, exist_ok=True)
        args.export.write_text(export_chain_complex(complex_), encoding="utf-8")
    payload: Dict[str, object] = {
        "graph": graph_id,
        "k": args.k,
        "ordered": args.ordered,
        "cells": list(complex_.cell_counts),
        "betti": vector.to_dict(),
        "euler_characteristic": None if complex_.truncated else euler_characteristic(complex_),
        "boundary_ok": check_boundary(complex_),
        "truncated": complex_.truncated,
        "subdivision_problems": subdivision_check(g, args.k),
    }
    _emit(args, payload, render_homology_text)
    return 0


def _run_tc(args: argparse.Namespace) -> int:
    try:
        limits = load_limits(args.config)
        g, graph_id = _load(args.graph)
        result = evaluate(
            TCQuery(g, args.k, args.r, graph_id),
            certify=args.certify,
            limits=limits,
            progress=not args.no_progress,
        )
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc
    if args.pretty:
        print(render_tc_text(explain(result)))
    else:
        print(json.dumps(result.to_dict(), indent=2, ensure_ascii=False))
    return 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        if args.command == "analyze":
            return _run_analyze(args)
        if args.command == "subdivide":
            return _run_subdivide(args)
        if args.command == "epsilon":
            return _run_epsilon(args)
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "homology":
            return _run_homology(args)
        if args.command == "tc":
            return _run_tc(args)
    except ResourceLimitError as exc:
        print(f"Resource limit exceeded: {exc}", file=sys.stderr)
        return 2
    raise SystemExit(f"Unknown command: {args.command}")


def main() -> None:
    """CLI entrypoint."""
    _configure_warning_filters()
    raise SystemExit(run())


if __name__ == "__main__":
    main()
