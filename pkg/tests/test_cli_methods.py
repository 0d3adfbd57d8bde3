"""CLI method wiring tests for all subcommands."""

from __future__ import annotations

import json
from pathlib import Path
from types import SimpleNamespace

import pytest

from gbtk import cli
from gbtk.config import Limits
from gbtk.errors import ResourceLimitError

from conftest import FIXTURES


def _common(**kwargs) -> SimpleNamespace:
    base = {"config": None, "pretty": False, "no_progress": True}
    base.update(kwargs)
    return SimpleNamespace(**base)


def test_run_analyze_reports_essential_vertices(capsys) -> None:
    rc = cli._run_analyze(_common(graph=FIXTURES / "H.json"))
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["graph"] == "H"
    assert payload["m"] == 2
    assert payload["essential"] == ["u", "w"]
    assert payload["valences"]["l1"] == 1


def test_run_analyze_wraps_value_error_as_system_exit(tmp_path: Path) -> None:
    with pytest.raises(SystemExit, match="not found"):
        cli._run_analyze(_common(graph=tmp_path / "missing.json"))


def test_run_subdivide_writes_output(tmp_path: Path, capsys) -> None:
    out = tmp_path / "sub" / "H_paper.json"
    rc = cli._run_subdivide(_common(graph=FIXTURES / "H.json", abrams=None, paper=True, out=out))
    assert rc == 0
    assert out.exists()
    payload = json.loads(capsys.readouterr().out)
    assert payload["edges"] == 7


def test_run_subdivide_rejects_zero_particles() -> None:
    with pytest.raises(SystemExit):
        cli._run_subdivide(_common(graph=FIXTURES / "H.json", abrams=0, paper=False, out=None))


def test_run_epsilon_prints_word(capsys) -> None:
    args = _common(graph=FIXTURES / "Y.json", vertex="c", pair=(1, 2), k=None)
    assert cli._run_epsilon(args) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["basis_word"] == "b2 b1 b2^-1 b1^-1 b2 b1 b2^-1 b1^-1"
    assert payload["abelianization"] == [0, 0, 0]
    assert payload["trivial"] is False
    assert len(payload["moves"]) == 12


def test_run_epsilon_wraps_errors() -> None:
    args = _common(graph=FIXTURES / "Y.json", vertex="a1", pair=(1, 2), k=None)
    with pytest.raises(SystemExit):
        cli._run_epsilon(args)


def test_run_verify_passes_limits_and_W(monkeypatch, capsys) -> None:
    captured = {}

    def fake_verify_all(g, W, graph_id="", limits=None, progress=True):
        captured.update(W=W, graph_id=graph_id, limits=limits, progress=progress)
        return SimpleNamespace(violations=[], to_dict=lambda: {"pairs": 0})

    monkeypatch.setattr(cli, "verify_all", fake_verify_all)
    monkeypatch.setattr(cli, "load_limits", lambda path: Limits(max_vertices=2))

    args = _common(graph=FIXTURES / "H.json", k=4, W=None, all_pairs=True, lam=None, mu=None)
    assert cli._run_verify(args) == 0
    assert captured["W"] == ["u", "w"]
    assert captured["graph_id"] == "H"
    assert captured["limits"] == Limits(max_vertices=2)
    assert captured["progress"] is False
    assert json.loads(capsys.readouterr().out) == {"pairs": 0}


def test_run_verify_defaults_to_witness_pair(capsys) -> None:
    args = _common(graph=FIXTURES / "H.json", k=4, W=None, all_pairs=False, lam=None, mu=None)
    assert cli._run_verify(args) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["lambda"] == "u:{1,2} w:{3,4}"
    assert payload["mu"] == "u:{2,3} w:{1,4}"
    assert payload["verdicts"]["prop2_trivial"] is True


def test_run_verify_explicit_pair(capsys) -> None:
    args = _common(
        graph=FIXTURES / "H.json",
        k=4,
        W=["u", "w"],
        all_pairs=False,
        lam="u:{1,2} w:{3,4}",
        mu="u:{1,2} w:{3,4}",
    )
    assert cli._run_verify(args) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdicts"]["prop1_injective"] is True


def test_run_verify_rejects_parity_mismatch() -> None:
    args = _common(graph=FIXTURES / "H.json", k=3, W=None, all_pairs=False, lam=None, mu=None)
    with pytest.raises(SystemExit, match="2\\|W\\|"):
        cli._run_verify(args)


def test_run_verify_needs_both_partitions() -> None:
    args = _common(
        graph=FIXTURES / "H.json", k=4, W=None, all_pairs=False, lam="u:{1,2} w:{3,4}", mu=None
    )
    with pytest.raises(SystemExit, match="together"):
        cli._run_verify(args)


def test_run_verify_returns_one_on_violations(monkeypatch, capsys) -> None:
    monkeypatch.setattr(
        cli,
        "verify_all",
        lambda *a, **kw: SimpleNamespace(violations=["x"], to_dict=lambda: {"violation_count": 1}),
    )
    args = _common(graph=FIXTURES / "H.json", k=4, W=None, all_pairs=True, lam=None, mu=None)
    assert cli._run_verify(args) == 1


def _homology_args(tmp_path: Path, **kwargs) -> SimpleNamespace:
    values = dict(
        graph=FIXTURES / "Y.json",
        k=2,
        ordered=False,
        max_dim=None,
        abrams=False,
        check=False,
        mod_p=None,
        export=None,
    )
    values.update(kwargs)
    return _common(**values)


def test_run_homology_payload(tmp_path: Path, capsys) -> None:
    export = tmp_path / "out" / "Y.chain"
    with pytest.warns(UserWarning):
        rc = cli._run_homology(_homology_args(tmp_path, export=export))
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cells"] == [6, 6]
    assert payload["betti"]["values"] == [1, 1]
    assert payload["euler_characteristic"] == 0
    assert payload["boundary_ok"] is True
    assert payload["subdivision_problems"]
    assert export.read_text(encoding="utf-8").startswith("# gbtk chain complex")


def test_run_homology_check_fails_on_coarse_graph(tmp_path: Path) -> None:
    with pytest.raises(SystemExit, match="subdivided"):
        cli._run_homology(_homology_args(tmp_path, check=True))


def test_run_homology_abrams_passes_check(tmp_path: Path, capsys) -> None:
    assert cli._run_homology(_homology_args(tmp_path, abrams=True, check=True)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["subdivision_problems"] == []
    assert payload["betti"]["values"][:2] == [1, 1]


def test_run_tc_invokes_evaluate(monkeypatch, capsys) -> None:
    captured = {}
    real_evaluate = cli.evaluate

    def fake_evaluate(query, certify=False, limits=None, progress=True):
        captured.update(k=query.k, r=query.r, graph_id=query.graph_id, certify=certify, progress=progress)
        return real_evaluate(query, certify=False, limits=limits, progress=progress)

    monkeypatch.setattr(cli, "evaluate", fake_evaluate)
    args = _common(graph=FIXTURES / "H.json", k=4, r=2, certify=True)
    assert cli._run_tc(args) == 0
    assert captured == {"k": 4, "r": 2, "graph_id": "H", "certify": True, "progress": False}
    assert json.loads(capsys.readouterr().out)["value"] == 4


def test_run_tc_pretty(capsys) -> None:
    args = _common(graph=FIXTURES / "H.json", k=4, r=2, certify=False, pretty=True)
    assert cli._run_tc(args) == 0
    out = capsys.readouterr().out
    assert "gbtk Topological Complexity" in out
    assert "TC_2(Conf_4) = 4" in out


def test_run_tc_wraps_value_error_as_system_exit() -> None:
    args = _common(graph=FIXTURES / "H.json", k=4, r=0, certify=False)
    with pytest.raises(SystemExit, match="r must be at least 1"):
        cli._run_tc(args)


def test_run_maps_resource_limits_to_exit_code_two(monkeypatch, capsys) -> None:
    def boom(_args):
        raise ResourceLimitError("too many cells")

    monkeypatch.setattr(cli, "_run_homology", boom)
    monkeypatch.setattr(cli, "_parse_args", lambda argv=None: SimpleNamespace(command="homology"))
    assert cli.run() == 2
    assert "too many cells" in capsys.readouterr().err


def test_run_dispatches_all_subcommands(monkeypatch) -> None:
    monkeypatch.setattr(cli, "_run_analyze", lambda _args: 11)
    monkeypatch.setattr(cli, "_run_subdivide", lambda _args: 22)
    monkeypatch.setattr(cli, "_run_epsilon", lambda _args: 33)
    monkeypatch.setattr(cli, "_run_verify", lambda _args: 44)
    monkeypatch.setattr(cli, "_run_homology", lambda _args: 55)
    monkeypatch.setattr(cli, "_run_tc", lambda _args: 66)

    for command, expected in [
        ("analyze", 11),
        ("subdivide", 22),
        ("epsilon", 33),
        ("verify", 44),
        ("homology", 55),
        ("tc", 66),
    ]:
        monkeypatch.setattr(cli, "_parse_args", lambda argv=None, c=command: SimpleNamespace(command=c))
        assert cli.run() == expected


def test_run_unknown_command_raises(monkeypatch) -> None:
    monkeypatch.setattr(cli, "_parse_args", lambda argv=None: SimpleNamespace(command="unknown"))
    with pytest.raises(SystemExit, match="Unknown command: unknown"):
        cli.run()


def test_parse_args_pair_and_vertex_list() -> None:
    args = cli._parse_args(["epsilon", "g.json", "--vertex", "u", "--pair", "1, 2"])
    assert args.pair == (1, 2)
    args = cli._parse_args(["verify", "g.json", "--k", "4", "--W", "u,w", "--no-progress"])
    assert args.W == ["u", "w"]
    assert args.no_progress is True
    args = cli._parse_args(["homology", "g.json", "--k", "2", "--ordered"])
    assert args.ordered is True
    with pytest.raises(SystemExit):
        cli._parse_args(["subdivide", "g.json"])


@pytest.mark.parametrize(
    "argv",
    [
        ["tc", "g.json", "--k", "4", "--r", "2", "--bogus"],
        ["subdivide", "g.json"],
        ["homology", "g.json"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_with_one(argv, capsys) -> None:
    with pytest.raises(SystemExit) as excinfo:
        cli._parse_args(argv)
    assert excinfo.value.code == 1
    assert "error:" in capsys.readouterr().err
