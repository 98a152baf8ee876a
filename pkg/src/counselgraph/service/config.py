"""Engine configuration: one flat document, JSON on disk.

Defaults encode the published pipeline settings: retrieval k=3 with dense
weight 1.0, KG limits 5/10/8 with chain length 4, generation temperature 0.2
with a 7960-token output cap. API keys are never part of this file; they
come from the environment.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Union

from counselgraph.errors import CounselGraphError


class ConfigError(CounselGraphError):
    pass


@dataclass
class EngineConfig:
    # artifact paths; empty string means "use the built-in reference fixture"
    corpus_path: str = ""
    graph_path: str = ""
    index_path: str = ""
    # embedding provider; empty endpoint selects the offline hash provider
    embedding_endpoint: str = ""
    embedding_model: str = ""
    embedding_dim: int = 64
    # generation client; empty endpoint selects the deterministic mock
    generation_endpoint: str = ""
    generation_model: str = "mock-model"
    # retrieval
    retrieval_k: int = 3
    dense_weight: float = 1.0
    # kg traversal limits
    max_interventions: int = 5
    max_chains: int = 10
    max_general: int = 8
    max_chain_length: int = 4
    # generation parameters
    temperature: float = 0.2
    max_output_tokens: int = 7960
    # prompt templates
    rag_template: str = "rag_v1"
    kg_template: str = "kg_v1"
    # service behavior
    request_timeout: float = 60.0
    retries: int = 3
    max_query_chars: int = 4000
    # draft persistence is opt-in; empty means ephemeral
    draft_log_path: str = ""

    def validate(self) -> None:
        if not 1 <= self.retrieval_k <= 3:
            raise ConfigError(f"retrieval_k must be in 1..3, got {self.retrieval_k}")
        if not 0.0 <= self.dense_weight <= 1.0:
            raise ConfigError(f"dense_weight must be in [0, 1], got {self.dense_weight}")
        for name in ("max_interventions", "max_chains", "max_general", "max_chain_length"):
            value = getattr(self, name)
            if value < 1:
                raise ConfigError(f"{name} must be >= 1, got {value}")
        if not 0.0 <= self.temperature <= 2.0:
            raise ConfigError(f"temperature must be in [0, 2], got {self.temperature}")
        if self.max_output_tokens < 1:
            raise ConfigError(
                f"max_output_tokens must be >= 1, got {self.max_output_tokens}"
            )
        if self.embedding_dim < 1:
            raise ConfigError(f"embedding_dim must be >= 1, got {self.embedding_dim}")
        if self.request_timeout <= 0:
            raise ConfigError(f"request_timeout must be > 0, got {self.request_timeout}")
        if self.retries < 0:
            raise ConfigError(f"retries must be >= 0, got {self.retries}")
        if self.max_query_chars < 1:
            raise ConfigError(f"max_query_chars must be >= 1, got {self.max_query_chars}")


def config_to_obj(config: EngineConfig) -> Dict[str, Any]:
    return asdict(config)


def config_from_obj(obj: Dict[str, Any]) -> EngineConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config document must be an object")
    known = {f.name for f in fields(EngineConfig)}
    unknown = sorted(set(obj) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    config = EngineConfig(**obj)
    config.validate()
    return config


def save_config(config: EngineConfig, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(config_to_obj(config), indent=2) + "\n", encoding="utf-8"
    )


def load_config(path: Union[str, Path]) -> EngineConfig:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid config JSON: {exc.msg}")
    return config_from_obj(obj)
