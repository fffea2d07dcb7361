"""Run configuration: defaults, an optional JSON config file, CLI overrides.

The config file path comes from ``--config`` or the ``CARA_KIT_CONFIG``
environment variable.  Precedence is flags > file > defaults.
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

from .errors import DomainError
from .model import DiskGrid

ENV_VAR = "CARA_KIT_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    grid_J: int = 40
    grid_M: int = 64
    rmax: float = 1 - 2.0**-10
    slack_tol: float = 1e-12
    fp_tol: float = 1e-12
    fp_radius: float = 0.8
    lambda_samples: int = 360
    out: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        if self.grid_J < 1 or self.grid_M < 1:
            raise DomainError("grid_J and grid_M must be at least 1")
        if not 0 < self.rmax < 1:
            raise DomainError("rmax must lie in (0, 1)")
        if self.slack_tol <= 0 or self.fp_tol <= 0:
            raise DomainError("tolerances must be positive")
        if not 0 < self.fp_radius < 1:
            raise DomainError("fp_radius must lie in (0, 1)")
        if self.lambda_samples < 1:
            raise DomainError("lambda_samples must be at least 1")
        if self.format not in ("json", "csv"):
            raise DomainError("format must be 'json' or 'csv'")

    def grid(self) -> DiskGrid:
        return DiskGrid.geometric(self.grid_J, self.grid_M, self.rmax)

    def to_dict(self) -> dict:
        return asdict(self)


_FIELDS = {f.name for f in fields(RunConfig)}


def load_file(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError("config file must hold a JSON object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def resolve(overrides: dict, path: Optional[str] = None) -> RunConfig:
    """Merge defaults, the config file and non-None ``overrides``."""
    path = path or os.environ.get(ENV_VAR) or None
    cfg = RunConfig()
    if path:
        cfg = replace(cfg, **load_file(path))
    given = {k: v for k, v in overrides.items() if v is not None and k in _FIELDS}
    return replace(cfg, **given)
