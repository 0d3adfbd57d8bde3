"""Component words of δ_μ ∘ τ_λ and the injectivity/triviality checks.

Entry (v, w) of the matrix is the word traced at ``w`` by the particles μ(w)
while the ε loop at ``v`` runs on the pair λ(v). Words are taken up to
conjugacy, so only their triviality is meaningful. Nothing here builds the
braid group itself; every verdict is a statement about generator images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from .config import Limits, load_limits
from .errors import MoveError, ResourceLimitError
from .graph import Graph, essential_vertices
from .moves import (
    DiscreteConfiguration,
    LoopSpec,
    build_base_path,
    build_phi_lambda,
    conjugate,
    q_project,
)
from .partitions import (
    BinaryWPartition,
    case_label,
    check_compatible,
    disjoint,
    enumerate_partitions,
    format_partition,
)
from .words import (
    ProductWord,
    ThetaWord,
    abelianize,
    format_basis_word,
    free_generator_decomposition,
    is_trivial,
)


WordCache = Dict[Tuple[str, Tuple[int, int], str, Tuple[int, int]], ThetaWord]

INJECTIVITY_NOTE = (
    "each generator e_v maps to a nontrivial element of the free factor at v and to "
    "the identity elsewhere; free groups are torsion-free, so these images have "
    "infinite order and Z^W embeds"
)

_CASE_NOTES = {
    "v≠w": "ε at v never enters the open star of w",
    "λ=μ": "both tracked particles run ε at w: commutator squared, nontrivial",
    "overlap1": "one tracked particle traces γ12 γ23 γ31, which is trivial",
    "disjoint": "no tracked particle moves",
}


@dataclass(frozen=True)
class MatrixEntry:
    v: str
    w: str
    case: str
    word: ThetaWord
    trivial: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "v": self.v,
            "w": self.w,
            "case": self.case,
            "word": str(self.word),
            "basis_word": format_basis_word(free_generator_decomposition(self.word)),
            "trivial": self.trivial,
        }


@dataclass
class VerificationReport:
    graph_id: str
    W: Tuple[str, ...]
    lam: BinaryWPartition
    mu: BinaryWPartition
    entries: Dict[Tuple[str, str], MatrixEntry]
    prop1_injective: Optional[bool]
    prop2_trivial: Optional[bool]
    lemma_cases: bool
    all_trivial: bool
    injective_certificate: bool
    certificate: List[str] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    basepoint: Optional[DiscreteConfiguration] = None
    images: Dict[str, ProductWord] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def word(self, v: str, w: str) -> ThetaWord:
        return self.entries[(v, w)].word

    def image(self, v: str) -> ProductWord:
        """Image of the generator e_v in the product of the free factors over W."""
        return self.images[v]

    def to_dict(self) -> Dict[str, object]:
        return {
            "graph": self.graph_id,
            "W": list(self.W),
            "lambda": format_partition(self.lam),
            "mu": format_partition(self.mu),
            "basepoint": list(self.basepoint.positions) if self.basepoint else None,
            "entries": [self.entries[(v, w)].to_dict() for v in self.W for w in self.W],
            "verdicts": {
                "prop1_injective": self.prop1_injective,
                "prop2_trivial": self.prop2_trivial,
                "lemma_cases": self.lemma_cases,
                "all_trivial": self.all_trivial,
                "injective_certificate": self.injective_certificate,
            },
            "certificate": list(self.certificate),
            "violations": list(self.violations),
        }


@dataclass
class VerificationSummary:
    graph_id: str
    W: Tuple[str, ...]
    k: int
    pairs: int = 0
    injective_pairs: int = 0
    trivial_pairs: int = 0
    mixed_pairs: int = 0
    violations: List[VerificationReport] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "graph": self.graph_id,
            "W": list(self.W),
            "k": self.k,
            "pairs": self.pairs,
            "injective_pairs": self.injective_pairs,
            "trivial_pairs": self.trivial_pairs,
            "mixed_pairs": self.mixed_pairs,
            "violation_count": len(self.violations),
            "violations": [r.to_dict() for r in self.violations],
        }


def component_word(
    g: Graph,
    lam: BinaryWPartition,
    mu: BinaryWPartition,
    v: str,
    w: str,
) -> ThetaWord:
    """q_w of the ε loop at ``v``, tracking μ(w)."""
    check_compatible(lam, mu)
    loop = build_phi_lambda(g, lam).loops[v]
    return q_project(g, loop, mu[w], w)


def _basepoint_loops(
    g: Graph,
    loops: Dict[str, LoopSpec],
    base: DiscreteConfiguration,
    x0: DiscreteConfiguration,
    limits: Optional[Limits],
) -> Dict[str, LoopSpec]:
    essential = set(essential_vertices(g))
    for particle, vertex in enumerate(x0.positions, 1):
        if vertex in essential:
            raise MoveError(f"basepoint puts particle {particle} on essential vertex {vertex!r}")
    path = build_base_path(g, x0, base, limits)
    return {v: conjugate(g, loop, path, x0) for v, loop in loops.items()}


def verify_proposition(
    g: Graph,
    lam: BinaryWPartition,
    mu: BinaryWPartition,
    x0: Optional[DiscreteConfiguration] = None,
    graph_id: str = "",
    limits: Optional[Limits] = None,
    cache: Optional[WordCache] = None,
) -> VerificationReport:
    """Check the injectivity (λ = μ) and triviality (λ ∩ μ = ∅) patterns for one pair.

    With ``x0`` every ε loop is conjugated by a base path from ``x0``; the
    verdicts must not change.
    """
    check_compatible(lam, mu)
    W = lam.vertices
    phi = build_phi_lambda(g, lam)
    loops = phi.loops
    if x0 is not None:
        loops = _basepoint_loops(g, loops, phi.base, x0, limits)
        cache = None

    entries: Dict[Tuple[str, str], MatrixEntry] = {}
    violations: List[str] = []
    certificate: List[str] = []
    for v, w in product(W, W):
        key = (v, lam[v], w, mu[w])
        word = cache.get(key) if cache is not None else None
        if word is None:
            word = q_project(g, loops[v], mu[w], w)
            if cache is not None:
                cache[key] = word
        case = case_label(lam, mu, v, w)
        trivial = is_trivial(word)
        entries[(v, w)] = MatrixEntry(v, w, case, word, trivial)
        certificate.append(f"({v},{w}) {case}: {_CASE_NOTES[case]}")

        if trivial != (case != "λ=μ"):
            violations.append(
                f"entry ({v},{w}) in case {case} is {'trivial' if trivial else 'nontrivial'}: {word}"
            )
        if case == "v≠w" and x0 is None and len(word):
            violations.append(f"entry ({v},{w}) should be the empty word, got {word}")
        if case == "λ=μ" and any(abelianize(word)):
            violations.append(f"entry ({v},{w}) has nonzero abelianization {abelianize(word)}")

    images = {v: ProductWord({w: entries[(v, w)].word for w in W}) for v in W}
    for image in images.values():
        image.check(g)
    diagonal_nontrivial = all(not entries[(v, v)].trivial for v in W)
    off_diagonal_trivial = all(e.trivial for (v, w), e in entries.items() if v != w)
    injective_certificate = diagonal_nontrivial and off_diagonal_trivial
    all_trivial = all(image.is_trivial() for image in images.values())

    prop1: Optional[bool] = None
    prop2: Optional[bool] = None
    if lam == mu:
        prop1 = injective_certificate
        if prop1:
            certificate.append(INJECTIVITY_NOTE)
        else:
            violations.append("λ = μ but the injectivity certificate fails")
    if disjoint(lam, mu):
        prop2 = all_trivial
        if not prop2:
            violations.append("λ ∩ μ = ∅ but some entry is nontrivial")

    return VerificationReport(
        graph_id=graph_id,
        W=W,
        lam=lam,
        mu=mu,
        entries=entries,
        prop1_injective=prop1,
        prop2_trivial=prop2,
        lemma_cases=not violations,
        all_trivial=all_trivial,
        injective_certificate=injective_certificate,
        certificate=certificate,
        violations=violations,
        basepoint=x0,
        images=images,
    )


def verify_all(
    g: Graph,
    W: Sequence[str],
    graph_id: str = "",
    limits: Optional[Limits] = None,
    progress: bool = True,
) -> VerificationSummary:
    """Run verify_proposition over every ordered pair of binary W-partitions."""
    if limits is None:
        limits = load_limits()
    W = tuple(W)
    if len(W) > limits.max_vertices:
        raise ResourceLimitError(
            f"|W|={len(W)} exceeds the limit of {limits.max_vertices} (GBT_MAX_W)"
        )
    k = 2 * len(W)
    partitions = enumerate_partitions(k, W)
    summary = VerificationSummary(graph_id=graph_id, W=W, k=k)
    cache: WordCache = {}
    pairs = list(product(partitions, partitions))
    for lam, mu in tqdm(pairs, desc="Verifying", unit="pair", disable=not progress):
        report = verify_proposition(g, lam, mu, graph_id=graph_id, limits=limits, cache=cache)
        summary.pairs += 1
        if report.prop1_injective:
            summary.injective_pairs += 1
        elif report.prop2_trivial:
            summary.trivial_pairs += 1
        else:
            summary.mixed_pairs += 1
        if not report.ok:
            summary.violations.append(report)
    return summary
