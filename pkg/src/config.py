import os
from dataclasses import fields
from typing import Dict, Optional

from dotenv import dotenv_values, load_dotenv

from src.model.errors import ConfigError
from src.model.types import EngineConfig

load_dotenv()

# Runtime configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
DEFAULT_OUT_DIR = os.getenv("DEFAULT_OUT_DIR", "data")
TOOL_VERSION = os.getenv("TOOL_VERSION", "1.0.0")

# Reproducible manifests when set (seconds since epoch)
SOURCE_DATE_EPOCH = os.getenv("SOURCE_DATE_EPOCH")

_FIELD_TYPES = {f.name: (int if f.type in (int, 'int') else float) for f in fields(EngineConfig)}


def _coerce(name: str, raw) -> float:
    try:
        return _FIELD_TYPES[name](raw)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid value for {name}: {raw!r}") from e


def load_engine_config(path: Optional[str] = None,
                       overrides: Optional[Dict[str, object]] = None) -> EngineConfig:
    """
    Build an EngineConfig from defaults, an optional KEY=VALUE file and overrides.

    Keys in the file are EngineConfig field names, case-insensitive. Overrides
    with a None value are ignored, so argparse namespaces can be passed as-is.

    Raises:
        ConfigError: unknown key, unparsable value or violated invariant
        OSError: the config file cannot be read
    """
    values: Dict[str, object] = {}

    if path is not None:
        if not os.path.isfile(path):
            raise FileNotFoundError(f"config file not found: {path}")
        for key, raw in dotenv_values(path).items():
            name = key.strip().lower()
            if name not in _FIELD_TYPES:
                raise ConfigError(f"unknown config key {key!r} in {path}")
            values[name] = _coerce(name, raw)

    for name, raw in (overrides or {}).items():
        if raw is None:
            continue
        if name not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {name!r}")
        values[name] = _coerce(name, raw)

    return EngineConfig(**values)
