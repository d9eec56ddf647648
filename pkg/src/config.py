"""
Engine configuration loaded from JSON.

The default file is `config/engine.json` in the repository; the
`COBORDISM_CONFIG` environment variable or an explicit path overrides it.
A missing file means defaults.
"""

import json
import logging
import os
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "engine.json"
CONFIG_ENV_VAR = "COBORDISM_CONFIG"


class ConfigError(ValueError):
    """Raised for unreadable or invalid configuration."""


class AtpConfig(BaseModel):
    """External prover settings; no executable means dispatch is unavailable."""
    executable: Optional[str] = None
    args: List[str] = Field(default_factory=lambda: ["{problem}"])
    timeout: int = Field(default=60, ge=1, le=3600, description="Seconds")
    prover_name: str = "atp"

    @field_validator('args')
    @classmethod
    def validate_problem_placeholder(cls, v):
        if not any('{problem}' in arg for arg in v):
            raise ValueError("args must contain the {problem} placeholder")
        return v


class SearchConfig(BaseModel):
    """Proof search limits."""
    max_states: int = Field(default=10_000, ge=1)
    size_factor: int = Field(default=4, ge=1)


class EngineConfig(BaseModel):
    atp: AtpConfig = Field(default_factory=AtpConfig)
    search: SearchConfig = Field(default_factory=SearchConfig)


def load_config(path: Optional[str] = None) -> EngineConfig:
    """
    Load engine configuration.

    Args:
        path: Explicit file; falls back to $COBORDISM_CONFIG, then the
            default file

    Returns:
        EngineConfig, with defaults when the file does not exist

    Raises:
        ConfigError: If the file is not valid JSON or fails validation
    """
    chosen = Path(path or os.getenv(CONFIG_ENV_VAR) or DEFAULT_CONFIG_PATH)
    if not chosen.exists():
        if path:
            raise ConfigError(f"config file not found: {chosen}")
        logger.debug("No config at %s, using defaults", chosen)
        return EngineConfig()
    try:
        with open(chosen) as f:
            data = json.load(f)
        config = EngineConfig.model_validate(data)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{chosen}: invalid JSON: {exc}")
    except ValidationError as exc:
        raise ConfigError(f"{chosen}: {exc.errors()[0]['msg']}")
    logger.debug("Loaded config from %s", chosen)
    return config
