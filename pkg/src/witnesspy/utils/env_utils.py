"""
Environment utilities for witnesspy configuration

This module loads run defaults from environment variables and .env files.
Command-line flags and config-file sections override every value read here.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import dotenv_values, load_dotenv

logger = logging.getLogger(__name__)

VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class EnvManager:
    """
    Environment configuration manager for witnesspy.

    Variables:
        WITNESSPY_THREADS: worker processes for the exact solver (default: CPU count)
        WITNESSPY_DEPTH: parallel split depth (default 3)
        WITNESSPY_SKIP_FRAC: suffix fraction skipping the prune test (default 0.75)
        WITNESSPY_SEED: base seed for heuristics and simulations (default 0)
        WITNESSPY_LOG_LEVEL: DEBUG, INFO, WARNING, ERROR or CRITICAL (default INFO)
        WITNESSPY_LOG_FILE: optional log file (default: console only)
    """

    def __init__(self, env_file: Optional[Union[str, Path]] = None):
        """
        Initialize EnvManager.

        Args:
            env_file: Path to .env file (defaults to .env in current directory)
        """
        self.env_file = Path(env_file) if env_file else Path.cwd() / ".env"
        self.loaded_vars: Dict[str, str] = {}
        self._load_env_file()

    def _load_env_file(self) -> None:
        if not self.env_file.exists():
            logger.debug(f"No .env file found at {self.env_file}")
            return
        values = dotenv_values(self.env_file)
        self.loaded_vars = {key: value for key, value in values.items() if key not in os.environ and value is not None}
        # already-set variables win over the file
        load_dotenv(self.env_file, override=False)
        logger.debug(f"Loaded {len(self.loaded_vars)} variables from {self.env_file}")

    def _get_int(self, name: str, default: int, minimum: int) -> int:
        raw = os.getenv(name)
        if raw is None or raw == "":
            return default
        try:
            value = int(raw)
            if value < minimum:
                raise ValueError(f"{name} must be at least {minimum}")
            return value
        except (ValueError, TypeError):
            logger.warning(f"Invalid {name} value '{raw}', using default {default}")
            return default

    def get_threads(self) -> int:
        """Worker processes for the branch-and-bound split."""
        return self._get_int("WITNESSPY_THREADS", os.cpu_count() or 1, 1)

    def get_depth(self) -> int:
        return self._get_int("WITNESSPY_DEPTH", 3, 0)

    def get_skip_fraction(self) -> float:
        raw = os.getenv("WITNESSPY_SKIP_FRAC")
        if raw is None or raw == "":
            return 0.75
        try:
            value = float(raw)
            if not 0.0 <= value <= 1.0:
                raise ValueError("Skip fraction must lie in [0, 1]")
            return value
        except (ValueError, TypeError):
            logger.warning(f"Invalid WITNESSPY_SKIP_FRAC value '{raw}', using default 0.75")
            return 0.75

    def get_seed(self) -> int:
        return self._get_int("WITNESSPY_SEED", 0, 0)

    def get_log_level(self) -> str:
        """
        Get logging level from environment.

        Returns:
            Log level string
        """
        level = os.getenv("WITNESSPY_LOG_LEVEL", "INFO").upper()
        if level not in VALID_LOG_LEVELS:
            logger.warning(f"Invalid log level '{level}', using INFO")
            return "INFO"
        return level

    def get_log_file(self) -> Optional[str]:
        """
        Get log file path from environment.

        Returns:
            Log file path or None for console only
        """
        return os.getenv("WITNESSPY_LOG_FILE") or None

    def get_config_dict(self) -> Dict[str, Any]:
        """
        Get all configuration as a dictionary.

        Returns:
            Dictionary containing all effective environment values
        """
        return {
            "threads": self.get_threads(),
            "depth": self.get_depth(),
            "skip_fraction": self.get_skip_fraction(),
            "seed": self.get_seed(),
            "log_level": self.get_log_level(),
            "log_file": self.get_log_file(),
        }

    def __str__(self) -> str:
        return f"EnvManager(env_file={self.env_file})"

    def __repr__(self) -> str:
        return f"EnvManager(env_file={self.env_file}, loaded_vars={len(self.loaded_vars)})"

