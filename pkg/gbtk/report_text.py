"""Text rendering for --pretty output."""

from __future__ import annotations

from typing import Dict, List


RULE = "-" * 40


def _framed(title: str, lines: List[str]) -> str:
    return "\n".join([RULE, title, RULE, *lines, RULE])


def _join(values: object) -> str:
    if not values:
        return "none"
    return ", ".join(str(v) for v in values)  # type: ignore[union-attr]


def render_analysis_text(payload: Dict[str, object]) -> str:
    valences: Dict[str, int] = payload.get("valences", {})  # type: ignore[assignment]
    lines = [
        f"Graph             : {payload.get('graph', 'unknown')}",
        f"Vertices          : {payload.get('vertices')}",
        f"Edges             : {payload.get('edges')}",
        f"Connected         : {payload.get('connected')}",
        f"First Betti       : {payload.get('first_betti')}",
        f"m(Γ)              : {payload.get('m')}",
        f"Essential         : {_join(payload.get('essential'))}",
        "",
        "Valences:",
    ]
    for v, d in valences.items():
        lines.append(f"- {v}: {d}")
    return _framed("gbtk Graph Analysis", lines)


def render_epsilon_text(payload: Dict[str, object]) -> str:
    lines = [
        f"Vertex            : {payload.get('vertex')}",
        f"Pair              : {_join(payload.get('pair'))}",
        f"Base              : {_join(payload.get('base'))}",
        f"q-word            : {payload.get('word')}",
        f"Basis word        : {payload.get('basis_word')}",
        f"Trivial           : {payload.get('trivial')}",
        "",
        "Moves:",
    ]
    lines.extend(f"  {mv}" for mv in payload.get("moves", []))  # type: ignore[union-attr]
    return _framed("gbtk ε Loop", lines)


def render_report_text(report: Dict[str, object]) -> str:
    verdicts: Dict[str, object] = report.get("verdicts", {})  # type: ignore[assignment]
    lines = [
        f"Graph             : {report.get('graph') or 'unknown'}",
        f"W                 : {_join(report.get('W'))}",
        f"λ                 : {report.get('lambda')}",
        f"μ                 : {report.get('mu')}",
        f"Injective (λ=μ)   : {verdicts.get('prop1_injective')}",
        f"Trivial (λ∩μ=∅)   : {verdicts.get('prop2_trivial')}",
        f"Cases match       : {verdicts.get('lemma_cases')}",
        "",
        "Entries:",
    ]
    for entry in report.get("entries", []):  # type: ignore[union-attr]
        lines.append(
            f"- ({entry['v']},{entry['w']}) {entry['case']:<8} "
            f"{'trivial' if entry['trivial'] else 'nontrivial'}: {entry['basis_word']}"
        )
    violations = report.get("violations") or []
    lines.append("")
    lines.append("Violations:")
    if violations:
        lines.extend(f"- {v}" for v in violations)  # type: ignore[union-attr]
    else:
        lines.append("- none")
    return _framed("gbtk Verification Report", lines)


def render_summary_text(summary: Dict[str, object]) -> str:
    lines = [
        f"Graph             : {summary.get('graph') or 'unknown'}",
        f"W                 : {_join(summary.get('W'))}",
        f"k                 : {summary.get('k')}",
        f"Ordered pairs     : {summary.get('pairs')}",
        f"Injective pairs   : {summary.get('injective_pairs')}",
        f"Trivial pairs     : {summary.get('trivial_pairs')}",
        f"Mixed pairs       : {summary.get('mixed_pairs')}",
        f"Violations        : {summary.get('violation_count')}",
    ]
    for report in summary.get("violations", [])[:5]:  # type: ignore[index]
        lines.append(f"- λ = {report['lambda']}, μ = {report['mu']}")
    return _framed("gbtk Verification Summary", lines)


def render_homology_text(payload: Dict[str, object]) -> str:
    betti: Dict[str, object] = payload.get("betti", {})  # type: ignore[assignment]
    label = "Betti (preview)   " if betti.get("preview") else "Betti             "
    lines = [
        f"Graph             : {payload.get('graph') or 'unknown'}",
        f"k                 : {payload.get('k')}",
        f"Model             : {'ordered' if payload.get('ordered') else 'unordered'}",
        f"Cells             : {'/'.join(str(n) for n in payload.get('cells', []))}",  # type: ignore[union-attr]
        f"{label}: {_join(betti.get('values'))} over {betti.get('coefficients')}",
        f"Euler char.       : {payload.get('euler_characteristic')}",
        f"∂∂ = 0            : {payload.get('boundary_ok')}",
        f"Truncated         : {payload.get('truncated')}",
    ]
    return _framed("gbtk Configuration Complex", lines)


def render_tc_text(explanation: str) -> str:
    return _framed("gbtk Topological Complexity", explanation.splitlines())
