"""Resource limit resolution tests."""

from __future__ import annotations

from pathlib import Path

import pytest

from gbtk.config import Limits, load_limits


def test_defaults() -> None:
    limits = load_limits(env={})
    assert limits == Limits()
    assert limits.cell_cap == 5_000_000
    assert limits.max_vertices == 4
    assert limits.certify_max_k == 8


def test_yaml_file(tmp_path: Path) -> None:
    path = tmp_path / "gbtk.yaml"
    path.write_text("limits:\n  cell_cap: 1_000\n  max_vertices: 3\n", encoding="utf-8")
    limits = load_limits(path, env={})
    assert limits.cell_cap == 1000
    assert limits.max_vertices == 3
    assert limits.state_cap == Limits().state_cap


def test_config_from_environment_path(tmp_path: Path) -> None:
    path = tmp_path / "gbtk.yaml"
    path.write_text("limits:\n  certify_max_k: 6\n", encoding="utf-8")
    assert load_limits(env={"GBT_CONFIG": str(path)}).certify_max_k == 6


def test_environment_overrides_yaml(tmp_path: Path) -> None:
    path = tmp_path / "gbtk.yaml"
    path.write_text("limits:\n  cell_cap: 1000\n", encoding="utf-8")
    limits = load_limits(path, env={"GBT_CELL_CAP": "42", "GBT_STATE_CAP": " "})
    assert limits.cell_cap == 42
    assert limits.state_cap == Limits().state_cap


def test_empty_yaml_is_defaults(tmp_path: Path) -> None:
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    assert load_limits(path, env={}) == Limits()


@pytest.mark.parametrize(
    "text",
    [
        "limits:\n  cell_cap: many\n",
        "limits:\n  cell_cap: 0\n",
        "limits:\n  cell_cap: true\n",
        "limits:\n  cells: 10\n",
        "limits: [1, 2]\n",
        "- 1\n- 2\n",
    ],
)
def test_bad_yaml_rejected(tmp_path: Path, text: str) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ValueError):
        load_limits(path, env={})


def test_bad_environment_value() -> None:
    with pytest.raises(ValueError, match="GBT_MAX_W"):
        load_limits(env={"GBT_MAX_W": "-1"})


def test_missing_config_file(tmp_path: Path) -> None:
    with pytest.raises(ValueError, match="not found"):
        load_limits(tmp_path / "nope.yaml", env={})
