# settings.py

import os
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError


CONFIG_ENV_VAR = "CROSSGRAPH_CONFIG"
DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")


class SettingsError(ValueError):
    """Raised when a configuration file cannot be read or validated."""


class EnumerationSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    exhaustive_limit: int = Field(default=3, ge=0)
    jobs: int = Field(default=1, ge=1)
    chunk_size: int = Field(default=1024, ge=1)


class SamplingSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=20240611)
    sample_size: int = Field(default=10000, ge=0)
    void_density: float = Field(default=0.06, ge=0.0, le=1.0)
    max_attempts_factor: int = Field(default=400, ge=1)


class LoggingSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: str = Field(default="WARNING")


class Settings(BaseModel):
    """
    Run defaults for enumeration, sampling and logging.
    Every field has a default so an empty file is a valid configuration.
    """

    model_config = ConfigDict(extra="forbid")

    enumeration: EnumerationSettings = Field(default_factory=EnumerationSettings)
    sampling: SamplingSettings = Field(default_factory=SamplingSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


def load_settings(path: Optional[str] = None) -> Settings:
    """
    Load settings from `path`, else from $CROSSGRAPH_CONFIG, else from the
    bundled config.yaml. A missing file yields the defaults.
    """
    resolved = path or os.environ.get(CONFIG_ENV_VAR) or DEFAULT_CONFIG_PATH
    if not os.path.exists(resolved):
        if path is not None:
            raise SettingsError(f"Config file not found: {resolved}")
        return Settings()

    try:
        with open(resolved, "r") as f:
            raw: Any = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise SettingsError(f"Malformed YAML in {resolved}: {e}") from e

    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise SettingsError(f"Top level of {resolved} must be a mapping")

    try:
        return Settings.model_validate(raw)
    except ValidationError as e:
        raise SettingsError(f"Invalid settings in {resolved}: {e}") from e


def settings_overrides(settings: Settings, overrides: Dict[str, Dict[str, Any]]) -> Settings:
    """Return a copy of `settings` with per-section values replaced (None values are skipped)."""
    data = settings.model_dump()
    for section, values in overrides.items():
        for key, value in values.items():
            if value is not None:
                data[section][key] = value
    try:
        return Settings.model_validate(data)
    except ValidationError as e:
        raise SettingsError(f"Invalid override: {e}") from e
