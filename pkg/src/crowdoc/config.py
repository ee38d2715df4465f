"""Shared configuration: built-in defaults, YAML config file, CLI flags,
with flags taking precedence over the file over defaults."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

from .errors import ConfigError
from .retrieval.knowledge import KnowledgeType


@dataclass
class Config:
    store_dir: str = "store"
    index_dir: str = "index"
    endpoint: str = "https://api.openai.com/v1/chat/completions"
    model: str = "gpt-4o"
    temperature: float = 0.8
    requests_per_minute: float = 60.0
    embedding_url: str = "http://localhost:8900"
    embedding_sidecar: str = "embeddings.npz"
    k: int = 10
    policy: str = "strict"
    parallelism: int = 4
    query_templates: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if not 0.0 <= self.temperature <= 2.0:
            raise ConfigError("temperature must be in [0, 2]")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")
        if self.policy not in ("strict", "lenient"):
            raise ConfigError("policy must be strict or lenient")

    def templates(self) -> dict[KnowledgeType, str] | None:
        if not self.query_templates:
            return None
        out = {}
        for name, template in self.query_templates.items():
            out[KnowledgeType.parse(name)] = template
        return out


def load_config(path: str | Path | None, overrides: dict | None = None) -> Config:
    """Merge defaults <- config file <- non-None overrides."""
    values: dict = {}
    if path is not None:
        try:
            data = yaml.safe_load(Path(path).read_text("utf-8")) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a mapping")
        known = {f.name for f in fields(Config)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return Config(**values)
