"""Run configuration loading: YAML file, environment, then CLI overrides."""

import os
from pathlib import Path
from typing import Any

import yaml

from growthindex.config.models import RunConfig
from growthindex.core.logging import get_logger

logger = get_logger(__name__)

ENV_PREFIX = "GROWTHINDEX_"


def load_config(config_file: str = "", overrides: dict[str, Any] | None = None) -> RunConfig:
    """Load a run configuration.

    Priority, lowest first: built-in defaults, YAML file, ``GROWTHINDEX_*``
    environment variables, explicit overrides (from CLI flags).

    Args:
        config_file: Path to a YAML configuration file (optional)
        overrides: Values set on the command line (optional)

    Returns:
        Validated run configuration

    Raises:
        FileNotFoundError: If the configuration file does not exist
        ValueError: If the configuration is invalid
    """
    data: dict[str, Any] = _load_from_file(Path(config_file)) if config_file else {}
    data = _merge(data, get_env_overrides())
    if overrides:
        data = _merge(data, overrides)

    try:
        return RunConfig.model_validate(data)
    except ValueError as e:
        raise ValueError(f"Invalid configuration: {e}") from e


def _load_from_file(path: Path) -> dict[str, Any]:
    """Read a YAML mapping from ``path``.

    Raises:
        FileNotFoundError: If file doesn't exist
        ValueError: If file is invalid YAML or not a mapping
    """
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")

    logger.info("Loading configuration file", path=str(path))

    try:
        with path.open("r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ValueError(f"Invalid YAML in configuration file: {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError("Configuration file must contain a YAML mapping")
    return data


def _merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Recursively merge two mappings, with override taking precedence."""
    result = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


def get_env_overrides() -> dict[str, Any]:
    """Collect overrides from ``GROWTHINDEX_*`` environment variables.

    Numbers are passed as strings and coerced by pydantic validation.

    Returns:
        Nested override mapping (estimator knobs under ``settings``)
    """

    def get_str(key: str) -> str:
        return os.getenv(f"{ENV_PREFIX}{key.upper()}", "")

    settings = {
        name: value
        for name, value in (
            ("pmax", get_str("pmax")),
            ("xmax", get_str("xmax")),
            ("tolerance", get_str("tol")),
            ("windows", get_str("windows")),
        )
        if value
    }
    result: dict[str, Any] = {}
    if settings:
        result["settings"] = settings
    if suite := get_str("suite"):
        result["suite"] = suite
    return result
