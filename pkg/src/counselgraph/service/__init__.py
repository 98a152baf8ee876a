"""Service layer: engine configuration, the engine itself and the HTTP app."""

from counselgraph.service.app import MODE_NAMES, create_app
from counselgraph.service.config import (
    ConfigError,
    EngineConfig,
    config_from_obj,
    config_to_obj,
    load_config,
    save_config,
)
from counselgraph.service.engine import (
    ChainView,
    Engine,
    QueryOverrides,
    QueryTooLongError,
    Snapshot,
    StartupError,
    UnknownModeError,
    chain_text,
)
