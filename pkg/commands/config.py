"""
Swapurify Configuration

Defaults, YAML loading and precedence resolution. Command-line flags
override environment variables, which override the config file, which
overrides DEFAULT_CONFIG.
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from protocol import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV = 'SWAPURIFY_CONFIG'
THREADS_ENV = 'SWAPURIFY_THREADS'
DEFAULT_CONFIG_PATH = 'config.yaml'

# ---------------------------------------------------------------------------
# Defaults
# ---------------------------------------------------------------------------

DEFAULT_CONFIG: Dict[str, Any] = {
    "numerics": {
        "atol": 1e-10,
        "eig_residual": 1e-9,
        "compare_tol": 1e-9,
        "clamp_tol": 1e-10,
        "imag_tol": 1e-9,
        "eig_zero_floor": 1e-13,
        "max_qr_iterations": 500,
    },
    "scan": {
        "resolution": 200,
        "threads": None,
        "curve_points": 100,
    },
    "verify": {
        "grid": 15,
        "b_values": [0.1, 0.22, 1.0 / 3.0, 0.4],
        "max_rounds": 40,
        "asymptotic_points": 25,
        "seed": 0xDEADBEEF,
    },
}

# ---------------------------------------------------------------------------
# Config I/O
# ---------------------------------------------------------------------------


def _deep_merge(base: dict, override: dict) -> None:
    """Merge override into base in-place (recursive for nested dicts)."""
    for key, value in override.items():
        if key in base and isinstance(base[key], dict) and isinstance(value, dict):
            _deep_merge(base[key], value)
        else:
            base[key] = value


def config_path_from(cli_path: Optional[str]) -> Optional[Path]:
    """
    Resolve which config file to read.

    Args:
        cli_path: Value of --config, if given

    Returns:
        Path to read, or None when no file applies
    """
    if cli_path:
        return Path(cli_path)
    env_path = os.environ.get(CONFIG_ENV)
    if env_path:
        return Path(env_path)
    default = Path(DEFAULT_CONFIG_PATH)
    return default if default.exists() else None


def load_config(path: Optional[Path]) -> Dict[str, Any]:
    """
    Load a config file over DEFAULT_CONFIG.

    Args:
        path: YAML file, or None for defaults only

    Returns:
        Merged configuration dictionary

    Raises:
        ConfigError: If a named file is missing, unreadable or malformed
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    if path is None:
        return config

    logger.info(f"Loading configuration from {path}")
    try:
        loaded = yaml.safe_load(path.read_text()) or {}
    except FileNotFoundError:
        raise ConfigError(f"Configuration file not found: {path}", "Copy config.example.yaml to start")
    except OSError as e:
        raise ConfigError(f"Cannot read configuration {path}: {e}")
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}")

    if not isinstance(loaded, dict):
        raise ConfigError(f"Configuration {path} must be a mapping")
    _deep_merge(config, loaded)
    return config


def resolve_threads(cli_threads: Optional[int], config: Dict[str, Any]) -> Optional[int]:
    """
    Worker count by precedence: flag, SWAPURIFY_THREADS, config file.

    Returns None when nothing is set (the scan then uses the CPU count).
    """
    if cli_threads:
        return cli_threads
    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            logger.warning(f"Ignoring invalid {THREADS_ENV}={env_value!r}")
    configured = config.get('scan', {}).get('threads')
    return int(configured) if configured else None
