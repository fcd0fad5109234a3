"""
Settings and per-invocation run configuration.

Settings come from class defaults, then an optional JSON file
(flowhom.json in the working directory, or an explicit path), then
command-line overrides collected into a RunConfig.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, ClassVar

from flowhom.constants import (
    CONFIG_FILE,
    DEFAULT_P_MAX,
    DEFAULT_PATH_LIMIT,
    DEFAULT_PRIME,
    DEFAULT_WORKERS,
    ENUMERATE_DEFAULT_MAX_N,
    ENUMERATE_MAX_N,
    ENUMERATE_MIN_N,
    ORACLE_MAX_P,
    ORACLE_MAX_VERTICES,
)
from flowhom.errors import ConfigError
from flowhom.linalg import Field

logger = logging.getLogger(__name__)

SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class Settings:
    field: str = "rational"
    prime: int = DEFAULT_PRIME
    p_max: int = DEFAULT_P_MAX
    path_limit: int = DEFAULT_PATH_LIMIT
    workers: int = DEFAULT_WORKERS
    enumerate_max_n: int = ENUMERATE_DEFAULT_MAX_N
    oracle_max_vertices: int = ORACLE_MAX_VERTICES
    oracle_max_p: int = ORACLE_MAX_P

    FIELD_MODES: ClassVar[tuple[str, ...]] = ("rational", "prime")

    def validate(self) -> "Settings":
        if self.field not in self.FIELD_MODES:
            raise ConfigError(f"field must be one of {', '.join(self.FIELD_MODES)}, got '{self.field}'")
        if self.p_max < 1:
            raise ConfigError(f"p_max must be >= 1, got {self.p_max}")
        if self.path_limit < 1:
            raise ConfigError(f"path_limit must be positive, got {self.path_limit}")
        if self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")
        if not ENUMERATE_MIN_N <= self.enumerate_max_n <= ENUMERATE_MAX_N:
            raise ConfigError(
                f"enumerate_max_n must lie in {ENUMERATE_MIN_N}..{ENUMERATE_MAX_N}, got {self.enumerate_max_n}"
            )
        if self.oracle_max_vertices < 1 or self.oracle_max_p < 1:
            raise ConfigError("oracle guard rails must be positive")
        if self.field == "prime":
            Field.modular(self.prime)
        return self

    def make_field(self) -> Field:
        if self.field == "rational":
            return Field.rationals()
        logger.warning("prime field GF(%d): ranks may be under-reported for an unlucky prime", self.prime)
        return Field.modular(self.prime)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Settings":
        known = {f.name: f for f in fields(cls)}
        values: dict[str, Any] = {}
        for key, value in data.items():
            if key not in known:
                logger.warning("ignoring unknown config key '%s'", key)
                continue
            expected = str if key == "field" else int
            if isinstance(value, bool) or not isinstance(value, expected):
                raise ConfigError(f"config key '{key}' must be {expected.__name__}, got {value!r}")
            values[key] = value
        return cls(**values).validate()

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def load_settings(path: Path | None = None, cwd: Path | None = None) -> Settings:
    """
    Load settings from path, or from flowhom.json in cwd when present.

    Raises:
        ConfigError: explicit path missing, unreadable JSON, or bad values
    """
    if path is None:
        candidate = Path(cwd or Path.cwd()) / CONFIG_FILE
        if not candidate.exists():
            return Settings()
        path = candidate
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (json.JSONDecodeError, OSError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    logger.info("loaded settings from %s", path)
    return Settings.from_dict(data)


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation: command, effective settings, seed and output."""

    command: str
    settings: Settings
    seed: int | None = None
    output_path: Path | None = None

    # args attribute -> Settings field
    OVERRIDES: ClassVar[dict[str, str]] = {
        "field": "field",
        "prime": "prime",
        "pmax": "p_max",
        "path_limit": "path_limit",
        "workers": "workers",
    }

    @property
    def field(self) -> Field:
        return self.settings.make_field()

    @classmethod
    def from_args(cls, args: Any, settings: Settings) -> "RunConfig":
        """
        Apply flag overrides and validate before any computation.

        Raises:
            ConfigError: invalid flag values or combinations
        """
        overrides = {
            name: getattr(args, attr)
            for attr, name in cls.OVERRIDES.items()
            if getattr(args, attr, None) is not None
        }
        if "prime" in overrides and overrides.get("field", settings.field) != "prime":
            raise ConfigError("--prime requires --field prime")
        effective = replace(settings, **overrides).validate()

        seed = getattr(args, "seed", None)
        if seed is not None and not 0 <= seed < SEED_LIMIT:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed}")
        out = getattr(args, "out", None)
        return cls(args.command, effective, seed, Path(out) if out else None)
