"""Component word matrix and verdict tests."""

from __future__ import annotations

import json

import pytest

from gbtk.config import Limits
from gbtk.errors import MoveError, PartitionError, ResourceLimitError
from gbtk.graph import abrams_subdivide, essential_vertices, paper_subdivide
from gbtk.moves import DiscreteConfiguration
from gbtk.partitions import BinaryWPartition, disjoint, enumerate_partitions, witness_disjoint_pair
from gbtk.verifier import component_word, verify_all, verify_proposition
from gbtk.words import abelianize, free_generator_decomposition, is_trivial


COMMUTATOR_SQUARED = (2, 1, -2, -1, 2, 1, -2, -1)

LAM = BinaryWPartition.from_mapping({"u": {1, 2}, "w": {3, 4}})
MU = BinaryWPartition.from_mapping({"u": {2, 3}, "w": {1, 4}})


def test_component_words_by_case(h_graph) -> None:
    g = paper_subdivide(h_graph)
    assert component_word(g, LAM, MU, "u", "w").letters == ()
    diagonal = component_word(g, LAM, LAM, "u", "u")
    assert free_generator_decomposition(diagonal) == COMMUTATOR_SQUARED
    overlap = BinaryWPartition.from_mapping({"u": {1, 3}, "w": {2, 4}})
    assert is_trivial(component_word(g, LAM, overlap, "u", "u"))


def test_injective_when_equal(h_graph) -> None:
    report = verify_proposition(paper_subdivide(h_graph), LAM, LAM)
    assert report.prop1_injective is True
    assert report.prop2_trivial is None
    assert report.injective_certificate
    assert report.ok
    for v in ("u", "w"):
        assert free_generator_decomposition(report.word(v, v)) == COMMUTATOR_SQUARED
        assert abelianize(report.word(v, v)) == (0, 0, 0)
    assert any("torsion-free" in line for line in report.certificate)


def test_generator_images_in_product(h_graph) -> None:
    g = paper_subdivide(h_graph)
    report = verify_proposition(g, LAM, LAM)
    for v, other in (("u", "w"), ("w", "u")):
        image = report.image(v)
        assert set(image.components) == {"u", "w"}
        assert not image.is_trivial()
        assert image.components[v] == report.word(v, v)
        assert image.components[other].letters == ()
    both = report.image("u") * report.image("w")
    assert both.components["u"] == report.word("u", "u")
    assert both.components["w"] == report.word("w", "w")
    assert all(image.is_trivial() for image in verify_proposition(g, LAM, MU).images.values())


def test_trivial_when_disjoint(h_graph) -> None:
    report = verify_proposition(paper_subdivide(h_graph), LAM, MU)
    assert report.prop2_trivial is True
    assert report.prop1_injective is None
    assert report.all_trivial
    assert report.ok


def test_mixed_pair_reports_cases(h_graph) -> None:
    mu = BinaryWPartition.from_mapping({"u": {1, 3}, "w": {2, 4}})
    report = verify_proposition(paper_subdivide(h_graph), LAM, mu)
    assert report.prop1_injective is None
    assert report.prop2_trivial is None
    assert report.entries[("u", "u")].case == "overlap1"
    assert report.entries[("u", "u")].trivial
    assert report.lemma_cases


def test_mismatched_W_rejected(h_graph) -> None:
    other = BinaryWPartition.from_mapping({"w": {1, 2}, "u": {3, 4}})
    with pytest.raises(PartitionError):
        verify_proposition(paper_subdivide(h_graph), LAM, other)


def test_report_json(h_graph) -> None:
    data = verify_proposition(paper_subdivide(h_graph), LAM, LAM, graph_id="H").to_dict()
    text = json.dumps(data, ensure_ascii=False)
    assert json.loads(text)["verdicts"]["prop1_injective"] is True
    assert [e["case"] for e in data["entries"]] == ["λ=μ", "v≠w", "v≠w", "λ=μ"]
    assert data["entries"][0]["basis_word"] == "b2 b1 b2^-1 b1^-1 b2 b1 b2^-1 b1^-1"


@pytest.mark.parametrize("name", ["h_graph", "theta_graph"])
def test_exhaustive_patterns(name, request) -> None:
    g = paper_subdivide(request.getfixturevalue(name))
    W = essential_vertices(g)
    summary = verify_all(g, W, graph_id=name, progress=False)
    assert summary.pairs == 36
    assert summary.violations == []
    assert summary.injective_pairs == 6
    assert summary.trivial_pairs == 24
    assert summary.mixed_pairs == 6


def test_all_pairs_verdict_patterns(h_graph) -> None:
    g = paper_subdivide(h_graph)
    partitions = enumerate_partitions(4, ["u", "w"])
    for lam in partitions:
        for mu in partitions:
            report = verify_proposition(g, lam, mu)
            assert report.injective_certificate == (lam == mu)
            if disjoint(lam, mu):
                assert report.all_trivial
            assert report.all_trivial == all(lam[v] != mu[v] for v in ("u", "w"))


def test_k4_any_two_vertices(k4) -> None:
    g = paper_subdivide(k4)
    summary = verify_all(g, ["k2", "k4"], progress=False)
    assert summary.pairs == 36
    assert summary.violations == []


def test_three_vertices_k6(k33) -> None:
    g = paper_subdivide(k33)
    lam, mu = witness_disjoint_pair(6, ["x1", "x2", "y3"])
    assert verify_proposition(g, lam, mu).prop2_trivial is True
    assert verify_proposition(g, mu, mu).prop1_injective is True


def test_verify_all_guard(h_graph) -> None:
    with pytest.raises(ResourceLimitError):
        verify_all(paper_subdivide(h_graph), ["u", "w"], limits=Limits(max_vertices=1), progress=False)


def test_verdicts_invariant_under_basepoint_change(h_graph) -> None:
    g = paper_subdivide(abrams_subdivide(h_graph, 2))
    x0 = DiscreteConfiguration.of("a#2", "b#2", "d#1", "c#2")
    for lam, mu in [(LAM, LAM), (LAM, MU), (MU, MU), (LAM, BinaryWPartition.from_mapping({"u": {1, 3}, "w": {2, 4}}))]:
        plain = verify_proposition(g, lam, mu)
        moved = verify_proposition(g, lam, mu, x0=x0)
        assert moved.ok
        assert moved.prop1_injective == plain.prop1_injective
        assert moved.prop2_trivial == plain.prop2_trivial
        assert {key: e.trivial for key, e in moved.entries.items()} == {
            key: e.trivial for key, e in plain.entries.items()
        }


def test_basepoint_on_essential_vertex_rejected(h_graph) -> None:
    g = paper_subdivide(abrams_subdivide(h_graph, 2))
    with pytest.raises(MoveError):
        verify_proposition(g, LAM, LAM, x0=DiscreteConfiguration.of("u", "b#2", "d#1", "c#2"))


def _relabel(lam: BinaryWPartition, sigma) -> BinaryWPartition:
    return BinaryWPartition.from_mapping({v: {sigma[i] for i in pair} for v, pair in lam.items()})


def test_verdicts_depend_only_on_pattern(h_graph) -> None:
    g = paper_subdivide(h_graph)
    sigma = {1: 3, 2: 1, 3: 4, 4: 2}
    partitions = enumerate_partitions(4, ["u", "w"])
    for lam in partitions:
        for mu in partitions:
            plain = verify_proposition(g, lam, mu)
            moved = verify_proposition(g, _relabel(lam, sigma), _relabel(mu, sigma))
            assert moved.ok
            assert {key: e.trivial for key, e in moved.entries.items()} == {
                key: e.trivial for key, e in plain.entries.items()
            }
