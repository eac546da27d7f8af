"""Runtime configuration shared by the CLI subcommands.

Defaults sit at the resource guards of the underlying engines.  Environment
variables with the STEEN_ prefix override the defaults and explicit flags
override the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Mapping

from steen.milnor import DEGREE_CAP
from steen.resolution import S_MAX_LIMIT, T_MAX_LIMIT

__all__ = ["Config", "ENV_PREFIX", "config_problems", "from_env"]

ENV_PREFIX = "STEEN_"

_INT_FIELDS = frozenset({"degree_cap", "s_max", "t_max", "parallelism"})


@dataclass(frozen=True)
class Config:
    """Knobs for the CLI: algebra cap, resolution window, output plumbing."""

    degree_cap: int = DEGREE_CAP
    s_max: int = S_MAX_LIMIT
    t_max: int = T_MAX_LIMIT
    parallelism: int = 1
    output_dir: str = "."
    format: str = "text"


def from_env(
    base: Config | None = None, environ: Mapping[str, str] | None = None
) -> Config:
    """Apply STEEN_<FIELD> overrides to the base configuration."""
    cfg = Config() if base is None else base
    env = os.environ if environ is None else environ
    updates: dict[str, object] = {}
    for f in fields(Config):
        raw = env.get(ENV_PREFIX + f.name.upper())
        if raw is None:
            continue
        if f.name in _INT_FIELDS:
            try:
                updates[f.name] = int(raw)
            except ValueError:
                raise ValueError(
                    f"{ENV_PREFIX}{f.name.upper()}: expected an integer, got {raw!r}"
                ) from None
        else:
            updates[f.name] = raw
    return replace(cfg, **updates) if updates else cfg


def config_problems(cfg: Config) -> list[str]:
    """Guard violations, empty when the configuration is usable."""
    problems = []
    if cfg.degree_cap < 1:
        problems.append(f"degree_cap must be positive, got {cfg.degree_cap}")
    if not 0 <= cfg.s_max <= S_MAX_LIMIT:
        problems.append(f"s_max must be between 0 and {S_MAX_LIMIT}, got {cfg.s_max}")
    if not 0 <= cfg.t_max <= T_MAX_LIMIT:
        problems.append(f"t_max must be between 0 and {T_MAX_LIMIT}, got {cfg.t_max}")
    if cfg.t_max > cfg.degree_cap:
        problems.append(
            f"t_max {cfg.t_max} exceeds degree_cap {cfg.degree_cap}; "
            "the algebra cap must cover the resolution window"
        )
    if cfg.parallelism < 1:
        problems.append(f"parallelism must be at least 1, got {cfg.parallelism}")
    if cfg.format not in ("text", "svg"):
        problems.append(f"format must be 'text' or 'svg', got {cfg.format!r}")
    return problems
