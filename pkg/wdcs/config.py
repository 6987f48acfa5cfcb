"""Configuration management for wikidata-cs."""

import os
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from wdcs.errors import ConfigurationError


class Combiner(str, Enum):
    """How a multi-token label's frequency is derived from its tokens."""

    MIN = "min"
    PRODUCT = "product"
    LOOKUP = "lookup"


class Settings(BaseSettings):
    """Pipeline settings; every field can be set by flag, config file or env."""

    # Commonness
    threshold: float = Field(1e-6, gt=0)
    combiner: Combiner = Combiner.MIN
    strict_above: bool = False

    # Concept labels
    language: str = "en"
    allow_leading_digit: bool = False

    # Input policy
    strict: bool = False

    # Consolidation
    symmetric_canonical: bool = False
    mapping: Optional[str] = None

    # Analytics
    top: int = Field(50, ge=1)
    exclude: str = ""

    # Execution
    jobs: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    chunk_size: int = Field(1_000_000, ge=1)
    tmpdir: Optional[str] = None

    # Logging
    log_level: str = "INFO"
    log_format: str = "console"
    progress: bool = True

    model_config = SettingsConfigDict(env_prefix="WDCS_", env_file=".env", extra="ignore")

    @property
    def excluded_relations(self) -> frozenset:
        return frozenset(r.strip() for r in self.exclude.split(",") if r.strip())


def read_config_file(path: str) -> Dict[str, Any]:
    """Read a ``key=value`` file, or a YAML mapping for .yaml/.yml files."""
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigurationError(f"config file not found: {path}")

    text = config_path.read_text(encoding="utf-8")
    if config_path.suffix in (".yaml", ".yml"):
        loaded = yaml.safe_load(text) or {}
        if not isinstance(loaded, dict):
            raise ConfigurationError(f"{path} must contain a mapping")
        return {_normalize_key(k): v for k, v in loaded.items()}

    values: Dict[str, Any] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{line_number}: expected key=value")
        key, value = line.split("=", 1)
        values[_normalize_key(key)] = value.strip()
    return values


def _normalize_key(key: Any) -> str:
    return str(key).strip().lstrip("-").replace("-", "_")


def load_settings(
    config_path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    config_values: Optional[Mapping[str, Any]] = None,
) -> Settings:
    """Build settings with precedence: overrides > config file > environment.

    ``config_values`` replaces reading ``config_path`` when the caller has
    already read the file and taken out keys that are not settings.
    """
    values: Dict[str, Any] = {}
    if config_values is not None:
        values.update(config_values)
    elif config_path:
        values.update(read_config_file(config_path))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})

    unknown = set(values) - set(Settings.model_fields)
    if unknown:
        raise ConfigurationError(f"unknown settings: {', '.join(sorted(unknown))}")

    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigurationError(str(e)) from e
