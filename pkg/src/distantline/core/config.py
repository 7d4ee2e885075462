"""Configuration management for distantline.

Caps guard the exhaustive scans against accidental blowups. Values come from
the dataclass defaults, then ``config.json`` in the user config directory,
then ``DISTANTLINE_*`` environment variables, then CLI flags.
"""

import json
import logging
import os
import threading
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Optional

import platformdirs

logger = logging.getLogger(__name__)

APP_NAME = "distantline"
CONFIG_FILENAME = "config.json"
ENV_PREFIX = "DISTANTLINE_"

config_lock = threading.Lock()
_active_config: Optional["AppConfig"] = None


@dataclass(frozen=True)
class AppConfig:
    """Size caps and sampling settings."""

    ring_order_cap: int = 4096
    table_cap: int = 256  # arithmetic tables are materialized up to this order
    listing_cap: int = 64
    counting_cap: int = 256
    strong_subspace_cap: int = 200
    jordan_cap: int = 256
    sample_size: int = 1000
    seed: int = 0

    def with_overrides(self, **overrides: Optional[int]) -> "AppConfig":
        """Return a copy with the non-None overrides applied."""
        values = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **values)


def get_app_dirs() -> Dict[str, Path]:
    """Where distantline keeps its caps and its verification receipts.

    Returns:
        ``config_dir`` holds config.json; ``reports_dir`` receives the JSON
        receipts of ``verify --save``.
    """
    return {
        "config_dir": Path(platformdirs.user_config_dir(APP_NAME)),
        "reports_dir": Path(platformdirs.user_data_dir(APP_NAME)) / "reports",
    }


def _read_config_file(path: Path) -> Dict[str, int]:
    if not path.exists():
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.warning("Ignoring unreadable config file %s: %s", path, e)
        return {}
    if not isinstance(raw, dict):
        logger.warning("Ignoring config file %s: top level is not an object", path)
        return {}

    known = {f.name for f in fields(AppConfig)}
    values: Dict[str, int] = {}
    for key, value in raw.items():
        if key not in known:
            logger.debug("Ignoring unknown config key %r", key)
            continue
        if not isinstance(value, int) or isinstance(value, bool):
            logger.warning("Ignoring non-integer config value %s=%r", key, value)
            continue
        values[key] = value
    return values


def _read_env_overrides() -> Dict[str, int]:
    values: Dict[str, int] = {}
    for f in fields(AppConfig):
        env_name = ENV_PREFIX + f.name.upper()
        raw = os.environ.get(env_name)
        if raw is None:
            continue
        try:
            values[f.name] = int(raw)
        except ValueError:
            logger.warning("Ignoring non-integer environment override %s=%r", env_name, raw)
    return values


def load_config(config_dir: Optional[Path] = None) -> AppConfig:
    """Load configuration from the config file and environment.

    Args:
        config_dir: Directory holding config.json. Defaults to the platform
            config directory.

    Returns:
        The loaded AppConfig.
    """
    if config_dir is None:
        config_dir = get_app_dirs()["config_dir"]

    with config_lock:
        values = _read_config_file(Path(config_dir) / CONFIG_FILENAME)
        values.update(_read_env_overrides())
        return AppConfig(**values)


def save_config(config: AppConfig, config_dir: Optional[Path] = None) -> Path:
    """Write configuration to config.json.

    Args:
        config: The configuration to persist.
        config_dir: Target directory. Defaults to the platform config directory.

    Returns:
        Path of the written file.
    """
    if config_dir is None:
        config_dir = get_app_dirs()["config_dir"]
    config_dir = Path(config_dir)

    with config_lock:
        config_dir.mkdir(parents=True, exist_ok=True)
        path = config_dir / CONFIG_FILENAME
        with open(path, "w", encoding="utf-8") as f:
            json.dump(asdict(config), f, indent=2)
    return path


def get_config() -> AppConfig:
    """Return the active configuration, loading it on first use."""
    global _active_config
    if _active_config is None:
        loaded = load_config()
        with config_lock:
            if _active_config is None:
                _active_config = loaded
    return _active_config


def set_config(config: AppConfig) -> None:
    """Replace the active configuration (used by the CLI for flag overrides)."""
    global _active_config
    with config_lock:
        _active_config = config
