"""
ConfigParser - Run-configuration file parsing and validation

This module reads YAML or JSON run-configuration files whose top-level keys
are subcommand names (lnorm, seesaw, qlb, gilbert, gisin, certify, gen,
integerize). Each section maps flag names (underscored) to values; values
given on the command line take precedence.
"""

from pathlib import Path
from typing import Any, Callable, Dict, Union
import json
import logging

import yaml

from .validators import ConfigValidator

logger = logging.getLogger(__name__)

Check = Callable[[Any], bool]

METHODS = ("exact", "bruteforce", "seesaw", "local")


def _is_method(value: Any) -> bool:
    return value in METHODS


SOLVER_SCHEMA: Dict[str, Check] = {
    "k": ConfigValidator.is_positive_int,
    "threads": ConfigValidator.is_positive_int,
    "depth": ConfigValidator.is_non_negative_int,
    "skip_frac": ConfigValidator.is_fraction,
    "guess": ConfigValidator.is_non_negative_int,
    "method": _is_method,
    "warm_start": ConfigValidator.is_boolean,
    "warm_restarts": ConfigValidator.is_positive_int,
    "witness": ConfigValidator.is_boolean,
    "restarts": ConfigValidator.is_positive_int,
    "seed": ConfigValidator.is_non_negative_int,
}

SEESAW_SCHEMA: Dict[str, Check] = {
    "k": ConfigValidator.is_positive_int,
    "restarts": ConfigValidator.is_positive_int,
    "seed": ConfigValidator.is_non_negative_int,
}

QLB_SCHEMA: Dict[str, Check] = {
    "restarts": ConfigValidator.is_positive_int,
    "seed": ConfigValidator.is_non_negative_int,
    "max_iter": ConfigValidator.is_positive_int,
    "tol": ConfigValidator.is_positive_real,
    "vectors": ConfigValidator.is_text,
    "fixed": ConfigValidator.is_boolean,
}

GILBERT_SCHEMA: Dict[str, Check] = {
    "eta": ConfigValidator.is_eta,
    "eps": ConfigValidator.is_positive_real,
    "imax": ConfigValidator.is_non_negative_int,
    "buffer": ConfigValidator.is_positive_int,
    "oracle_restarts": ConfigValidator.is_positive_int,
    "seed": ConfigValidator.is_non_negative_int,
    "scale": ConfigValidator.is_positive_int,
    "vectors": ConfigValidator.is_text,
    "packing": ConfigValidator.is_positive_int,
    "log_every": ConfigValidator.is_positive_int,
    "visibility": ConfigValidator.is_boolean,
    "threads": ConfigValidator.is_positive_int,
    "depth": ConfigValidator.is_non_negative_int,
    "skip_frac": ConfigValidator.is_fraction,
    "guess": ConfigValidator.is_non_negative_int,
    "warm_start": ConfigValidator.is_boolean,
    "warm_restarts": ConfigValidator.is_positive_int,
}

GISIN_SCHEMA: Dict[str, Check] = {
    "samples": ConfigValidator.is_positive_int,
    "seed": ConfigValidator.is_non_negative_int,
    "workers": ConfigValidator.is_positive_int,
    "chunk": ConfigValidator.is_positive_int,
    "pairs": ConfigValidator.is_text,
    "vectors": ConfigValidator.is_text,
}

CERTIFY_SCHEMA: Dict[str, Check] = {
    "threads": ConfigValidator.is_positive_int,
    "depth": ConfigValidator.is_non_negative_int,
    "skip_frac": ConfigValidator.is_fraction,
    "guess": ConfigValidator.is_non_negative_int,
    "warm_start": ConfigValidator.is_boolean,
    "warm_restarts": ConfigValidator.is_positive_int,
    "restarts": ConfigValidator.is_positive_int,
    "seed": ConfigValidator.is_non_negative_int,
    "vectors": ConfigValidator.is_text,
    "fixed": ConfigValidator.is_boolean,
    "eta": ConfigValidator.is_eta,
    "tol": ConfigValidator.is_positive_real,
    "bisect": ConfigValidator.is_boolean,
}

GEN_SCHEMA: Dict[str, Check] = {
    "family": ConfigValidator.is_positive_int,
    "packing": ConfigValidator.is_positive_int,
    "seed": ConfigValidator.is_non_negative_int,
    "iters": ConfigValidator.is_positive_int,
}

INTEGERIZE_SCHEMA: Dict[str, Check] = {
    "scale": ConfigValidator.is_positive_int,
}

SECTION_SCHEMAS: Dict[str, Dict[str, Check]] = {
    "lnorm": SOLVER_SCHEMA,
    "seesaw": SEESAW_SCHEMA,
    "qlb": QLB_SCHEMA,
    "gilbert": GILBERT_SCHEMA,
    "gisin": GISIN_SCHEMA,
    "certify": CERTIFY_SCHEMA,
    "gen": GEN_SCHEMA,
    "integerize": INTEGERIZE_SCHEMA,
}


class ConfigParser:
    """
    Parser for run-configuration files supporting YAML and JSON formats.

    Examples:
        >>> config = ConfigParser.parse_file("runs/w70.yaml")
        >>> solver = ConfigParser.section(config, "lnorm")
        >>> ConfigParser.validate_solver_section(solver)
    """

    @staticmethod
    def parse_file(config_file: Union[str, Path]) -> Dict[str, Any]:
        """
        Parse a configuration file.

        Args:
            config_file: Path to YAML or JSON configuration file

        Returns:
            Dictionary containing parsed configuration

        Raises:
            FileNotFoundError: If config file doesn't exist
            ValueError: If config file format is invalid
        """
        config_path = Path(config_file)

        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        if config_path.suffix.lower() in [".yaml", ".yml"]:
            config = ConfigParser._parse_yaml(config_path)
        elif config_path.suffix.lower() == ".json":
            config = ConfigParser._parse_json(config_path)
        else:
            raise ValueError(f"Unsupported configuration file format: {config_path.suffix}")

        if not isinstance(config, dict):
            raise ValueError(f"Configuration in {config_path} must be a mapping of sections")
        logger.debug(f"Loaded sections {list(config)} from {config_path}")
        return config

    @staticmethod
    def _parse_yaml(config_path: Path) -> Dict[str, Any]:
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                return yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML format in {config_path}: {e}") from e

    @staticmethod
    def _parse_json(config_path: Path) -> Dict[str, Any]:
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid JSON format in {config_path}: {e}") from e

    @staticmethod
    def section(config: Dict[str, Any], name: str) -> Dict[str, Any]:
        """
        Get one subcommand section; a missing section is empty.

        Raises:
            ValueError: If the name is unknown or the section is not a mapping
        """
        if name not in SECTION_SCHEMAS:
            raise ValueError(f"Unknown configuration section: {name}")
        section = config.get(name) or {}
        if not isinstance(section, dict):
            raise ValueError(f"Section '{name}' must be a dictionary")
        return dict(section)

    @staticmethod
    def _validate(name: str, section: Dict[str, Any], schema: Dict[str, Check]) -> None:
        if not isinstance(section, dict):
            raise ValueError(f"Section '{name}' must be a dictionary")
        for key, value in section.items():
            if key not in schema:
                raise ValueError(f"Unknown key '{key}' in section '{name}'")
            if not schema[key](value):
                raise ValueError(f"Invalid value for '{key}' in section '{name}': {value!r}")

    @staticmethod
    def validate_solver_section(section: Dict[str, Any]) -> None:
        """
        Validate the exact-solver section.

        Raises:
            ValueError: If configuration is invalid

        Expected format:
            lnorm:
              k: 2
              method: exact
              threads: 8
              depth: 3
              skip_frac: 0.75
              guess: 412000
        """
        ConfigParser._validate("lnorm", section, SOLVER_SCHEMA)

    @staticmethod
    def validate_gilbert_section(section: Dict[str, Any]) -> None:
        """
        Validate the Gilbert section.

        Expected format:
            gilbert:
              eta: 0.8
              eps: 1.0e-6
              imax: 200000
              buffer: 40
              oracle_restarts: 20
              scale: 1000
        """
        ConfigParser._validate("gilbert", section, GILBERT_SCHEMA)

    @staticmethod
    def validate_gisin_section(section: Dict[str, Any]) -> None:
        ConfigParser._validate("gisin", section, GISIN_SCHEMA)

    @staticmethod
    def validate_certify_section(section: Dict[str, Any]) -> None:
        ConfigParser._validate("certify", section, CERTIFY_SCHEMA)

    @staticmethod
    def validate_section(name: str, section: Dict[str, Any]) -> None:
        """Validate any section by name."""
        if name not in SECTION_SCHEMAS:
            raise ValueError(f"Unknown configuration section: {name}")
        ConfigParser._validate(name, section, SECTION_SCHEMAS[name])

    @staticmethod
    def save_config(config: Dict[str, Any], output_file: Union[str, Path]) -> None:
        """
        Save configuration to file.

        Args:
            config: Configuration dictionary to save
            output_file: Output file path (.yaml, .yml or .json)

        Examples:
            >>> ConfigParser.save_config({"lnorm": {"k": 2}}, "run.yaml")
        """
        output_path = Path(output_file)

        if output_path.suffix.lower() in [".yaml", ".yml"]:
            with open(output_path, "w", encoding="utf-8") as f:
                yaml.safe_dump(config, f, default_flow_style=False, sort_keys=False)
        elif output_path.suffix.lower() == ".json":
            with open(output_path, "w", encoding="utf-8") as f:
                json.dump(config, f, indent=2, sort_keys=False)
        else:
            raise ValueError(f"Unsupported output format: {output_path.suffix}")

    def __str__(self) -> str:
        return "ConfigParser()"

    def __repr__(self) -> str:
        return f"ConfigParser(sections={sorted(SECTION_SCHEMAS)})"
