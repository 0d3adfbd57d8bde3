"""Resource limits: defaults, optional YAML file, environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Dict, Mapping, Optional, Union

import yaml


PathLike = Union[str, os.PathLike]

CONFIG_ENV = "GBT_CONFIG"

_ENV_KEYS = {
    "cell_cap": "GBT_CELL_CAP",
    "max_vertices": "GBT_MAX_W",
    "certify_max_k": "GBT_CERTIFY_MAX_K",
    "state_cap": "GBT_STATE_CAP",
}


@dataclass(frozen=True)
class Limits:
    cell_cap: int = 5_000_000
    max_vertices: int = 4
    certify_max_k: int = 8
    state_cap: int = 2_000_000


def _parse_limit(raw: object, source: str) -> int:
    if isinstance(raw, bool):
        raise ValueError(f"{source}: expected a positive integer, got {raw!r}")
    try:
        value = int(str(raw).replace("_", "").strip())
    except ValueError:
        raise ValueError(f"{source}: expected a positive integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{source}: expected a positive integer, got {raw!r}")
    return value


def _read_yaml_limits(path: Path) -> Dict[str, int]:
    if not path.exists():
        raise ValueError(f"Config file not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: top level must be a mapping")
    section = data.get("limits", {}) or {}
    if not isinstance(section, dict):
        raise ValueError(f"{path}: 'limits' must be a mapping")
    known = {f.name for f in fields(Limits)}
    out: Dict[str, int] = {}
    for key, raw in section.items():
        if key not in known:
            raise ValueError(f"{path}: unknown limit '{key}'")
        out[key] = _parse_limit(raw, f"{path}:limits.{key}")
    return out


def load_limits(
    config_path: Optional[PathLike] = None,
    env: Optional[Mapping[str, str]] = None,
) -> Limits:
    """Resolve limits from defaults, a YAML file, then ``GBT_*`` variables.

    :param config_path: YAML file with a ``limits:`` mapping. Falls back to
                        ``$GBT_CONFIG`` when omitted.
    :param env: Environment mapping (defaults to ``os.environ``).
    """
    if env is None:
        env = os.environ
    limits = Limits()

    path_value = config_path if config_path is not None else env.get(CONFIG_ENV)
    if path_value:
        limits = replace(limits, **_read_yaml_limits(Path(path_value)))

    overrides: Dict[str, int] = {}
    for key, var in _ENV_KEYS.items():
        raw = env.get(var)
        if raw is not None and raw.strip():
            overrides[key] = _parse_limit(raw, var)
    if overrides:
        limits = replace(limits, **overrides)
    return limits
