"""Sequential topological complexity of ordered graph configuration spaces.

Exact values come from the stable range k >= 2m(Γ); below it the calculator
reports the general lower bound r·min(⌊k/2⌋, m(Γ)) against the dimension
bound r·m(Γ).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .config import Limits, load_limits
from .errors import GraphError, ResourceLimitError
from .graph import Graph, essential_count, essential_vertices, first_betti, is_connected, paper_subdivide
from .homology import certify_nonvanishing
from .partitions import witness_disjoint_pair
from .verifier import verify_proposition


RULES: Dict[str, str] = {
    "stable-value": "TC_r(Conf_k(Γ)) = r·m(Γ) whenever m(Γ) >= 2, k >= 2m(Γ) and r >= 1",
    "general-lower-bound": "TC_r(Conf_k(Γ)) >= r·min(⌊k/2⌋, m(Γ)) for k >= 4",
    "dimension-upper-bound": "TC_r(Conf_k(Γ)) <= r·m(Γ), since Conf_k(Γ) deformation retracts onto an m(Γ)-dimensional complex",
    "monotonicity-in-k": "TC_r(Conf_k(Γ)) is non-decreasing in k for fixed r; odd k rounds down to 2⌊k/2⌋",
    "aspherical-lower-bound": "Farber–Oprea: TC_r of an aspherical space is bounded below via subgroups A, B with A ∩ gBg⁻¹ = 1",
    "ls-category": "for r = 1 the invariant is the LS-category, which here equals cd(P_k(Γ))",
    "low-essential": "graphs with m(Γ) <= 1, or k < 4, are treated by other means; only bounds are reported",
}


@dataclass(frozen=True)
class TCQuery:
    graph: Graph
    k: int
    r: int
    graph_id: str = ""

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.r < 1:
            raise ValueError(f"r must be at least 1, got {self.r}")


@dataclass(frozen=True)
class Provenance:
    rule: str
    detail: str = ""

    @property
    def citation(self) -> str:
        return RULES[self.rule]

    def to_dict(self) -> Dict[str, str]:
        return {"rule": self.rule, "citation": self.citation, "detail": self.detail}


@dataclass
class TCResult:
    status: str
    lower: int
    upper: int
    m: int
    k: int
    r: int
    provenance: List[Provenance] = field(default_factory=list)
    certificates: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.status == "exact" and self.lower != self.upper:
            raise ValueError("exact results need equal bounds")

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.status == "exact" else None

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"status": self.status}
        if self.status == "exact":
            out["value"] = self.value
        else:
            out["lower"] = self.lower
            out["upper"] = self.upper
        out.update(
            {
                "m": self.m,
                "k": self.k,
                "r": self.r,
                "provenance": [p.to_dict() for p in self.provenance],
                "certificates": self.certificates,
            }
        )
        return out


def _certify(
    g: Graph,
    k: int,
    m: int,
    graph_id: str,
    limits: Limits,
    progress: bool,
) -> Dict[str, object]:
    d = min(k // 2, m)
    if 2 * d > limits.certify_max_k:
        raise ResourceLimitError(
            f"certification at k={2 * d} exceeds the limit of {limits.certify_max_k} (GBT_CERTIFY_MAX_K)"
        )
    W = essential_vertices(g)[:d]
    witness = witness_disjoint_pair(2 * d, W)
    if witness is None:
        raise GraphError("certification needs at least two essential vertices")
    lam, mu = witness
    subdivided = paper_subdivide(g)
    across = verify_proposition(subdivided, lam, mu, graph_id=graph_id, limits=limits)
    along = verify_proposition(subdivided, mu, mu, graph_id=graph_id, limits=limits)
    homology = certify_nonvanishing(g, d, limits=limits, progress=progress)
    return {
        "degree": d,
        "W": list(W),
        "trivial_on_other_torus": across.to_dict(),
        "injective_on_torus": along.to_dict(),
        "homology": homology.to_dict(),
        "holds": bool(across.prop2_trivial and along.prop1_injective and homology),
    }


def evaluate(
    query: TCQuery,
    certify: bool = False,
    limits: Optional[Limits] = None,
    progress: bool = True,
) -> TCResult:
    g, k, r = query.graph, query.k, query.r
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    m = essential_count(g)
    provenance: List[Provenance] = []

    if m >= 2 and k >= 2 * m:
        status, lower, upper = "exact", r * m, r * m
        provenance.append(Provenance("stable-value", f"m={m}, k={k} >= {2 * m}"))
        if r == 1:
            provenance.append(Provenance("ls-category", f"value {m}"))
    elif m >= 2 and k >= 4:
        status = "bounded"
        lower, upper = r * min(k // 2, m), r * m
        provenance.append(Provenance("general-lower-bound", f"{r}·min({k // 2}, {m}) = {lower}"))
        provenance.append(Provenance("dimension-upper-bound", f"{r}·{m} = {upper}"))
        if k % 2:
            provenance.append(Provenance("monotonicity-in-k", f"k={k} treated as {k - 1}"))
    else:
        status = "bounded"
        cap = 1 if first_betti(g) >= 1 else 0
        lower, upper = 0, r * max(m, cap)
        provenance.append(Provenance("low-essential", f"m={m}, k={k}"))
        provenance.append(Provenance("dimension-upper-bound", f"{r}·max({m}, {cap}) = {upper}"))

    certificates: Dict[str, object] = {}
    if certify:
        if m >= 2 and k >= 4:
            if limits is None:
                limits = load_limits()
            certificates = _certify(g, k, m, query.graph_id, limits, progress)
            provenance.append(
                Provenance("aspherical-lower-bound", f"degree {certificates['degree']} witness")
            )
            if k % 2 and status == "exact":
                provenance.append(Provenance("monotonicity-in-k", f"k={k} certified at {k - 1}"))
        else:
            certificates = {"skipped": "certification needs m(Γ) >= 2 and k >= 4"}

    return TCResult(status, lower, upper, m, k, r, provenance, certificates)


def explain(result: TCResult) -> str:
    """Derivation of a result, one applied rule per line."""
    if result.status == "exact":
        head = f"TC_{result.r}(Conf_{result.k}) = {result.value}"
    else:
        head = f"{result.lower} <= TC_{result.r}(Conf_{result.k}) <= {result.upper}"
    lines = [head, f"m(Γ) = {result.m}"]
    for p in result.provenance:
        lines.append(f"- [{p.rule}] {p.citation}" + (f" ({p.detail})" if p.detail else ""))
    certs = result.certificates
    if "holds" in certs:
        homology = certs["homology"]
        lines.append(
            f"certificate at degree {certs['degree']} on W = {', '.join(certs['W'])}: "
            f"{'holds' if certs['holds'] else 'FAILED'}"
        )
        lines.append(
            f"  triviality across tori: {certs['trivial_on_other_torus']['verdicts']['prop2_trivial']}"
        )
        lines.append(
            f"  injectivity on torus:   {certs['injective_on_torus']['verdicts']['prop1_injective']}"
        )
        lines.append(
            f"  b_{homology['degree']} = {homology['betti']} "
            f"(cells {'/'.join(str(n) for n in homology['cell_counts'])})"
        )
    elif "skipped" in certs:
        lines.append(f"certificate skipped: {certs['skipped']}")
    return "\n".join(lines)
