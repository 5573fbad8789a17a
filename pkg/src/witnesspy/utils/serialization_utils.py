"""
Serialization utilities for reports and run artifacts

This module provides helper functions for:
- Formatting reals (12 significant digits) and exact fractions
- Machine-readable key-value files (certificates, simulation reports)
- CSV tables (distance histories, Monte Carlo pair grids)
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Sequence, Union
import csv
import logging

import numpy as np
import yaml

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

REAL_DIGITS = 12


class ValueKind(Enum):
    """Kinds of values written to key-value files."""

    NULL = 0
    BOOLEAN = 1
    INTEGER = 2
    REAL = 3
    FRACTION = 4
    TEXT = 5


@dataclass
class SerializedValue:
    """Container for a serialized value with its kind."""

    kind: ValueKind
    original_value: Any
    serialized: Any


class SerializationUtils:
    """
    Utility class for writing deterministic, re-loadable run artifacts.

    The same inputs always produce byte-identical files.
    """

    @staticmethod
    def format_real(value: float) -> str:
        """
        Format a real with 12 significant digits.

        Examples:
            >>> SerializationUtils.format_real(2 ** 0.5)
            '1.41421356237'
        """
        return f"{float(value):.{REAL_DIGITS}g}"

    @staticmethod
    def format_fraction(value: Fraction) -> str:
        """
        Format an exact fraction as "p/q".

        Examples:
            >>> SerializationUtils.format_fraction(Fraction(342353, 218298))
            '342353/218298'
        """
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def parse_fraction(text: str) -> Fraction:
        return Fraction(str(text))

    @staticmethod
    def serialize_value(value: Any) -> SerializedValue:
        """
        Convert a Python or numpy value into its key-value file representation.

        Examples:
            >>> SerializationUtils.serialize_value(Fraction(1, 3)).serialized
            '1/3'
        """
        if value is None:
            return SerializedValue(ValueKind.NULL, value, None)
        if isinstance(value, (bool, np.bool_)):
            return SerializedValue(ValueKind.BOOLEAN, value, bool(value))
        if isinstance(value, (int, np.integer)):
            return SerializedValue(ValueKind.INTEGER, value, int(value))
        if isinstance(value, Fraction):
            return SerializedValue(ValueKind.FRACTION, value, SerializationUtils.format_fraction(value))
        if isinstance(value, (float, np.floating)):
            # repr of the rounded float is the 12-digit text itself
            return SerializedValue(ValueKind.REAL, value, float(SerializationUtils.format_real(value)))
        if isinstance(value, str):
            return SerializedValue(ValueKind.TEXT, value, value)
        raise TypeError(f"Cannot serialize value of type {type(value)}")

    @staticmethod
    def write_key_values(values: Dict[str, Any], path: PathLike) -> None:
        """
        Write a flat mapping as YAML, keys in insertion order.

        Args:
            values: Mapping of keys to ints, reals, fractions, booleans, strings or None
            path: Output file path
        """
        serialized = {key: SerializationUtils.serialize_value(value).serialized for key, value in values.items()}
        with open(Path(path), "w", encoding="utf-8", newline="\n") as handle:
            yaml.safe_dump(serialized, handle, sort_keys=False, default_flow_style=False)
        logger.debug(f"Wrote {len(serialized)} keys to {path}")

    @staticmethod
    def read_key_values(path: PathLike) -> Dict[str, Any]:
        """
        Read a key-value file written by write_key_values.

        Raises:
            FileNotFoundError: If the file does not exist
            ValueError: If the content is not a mapping
        """
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Key-value file not found: {file_path}")
        with open(file_path, "r", encoding="utf-8") as handle:
            try:
                data = yaml.safe_load(handle)
            except yaml.YAMLError as e:
                raise ValueError(f"Invalid key-value file {file_path}: {e}") from e
        if not isinstance(data, dict):
            raise ValueError(f"Key-value file {file_path} does not hold a mapping")
        return data

    @staticmethod
    def format_key_values(values: Dict[str, Any]) -> str:
        """Render a mapping as aligned "key: value" lines for console reports."""
        width = max((len(key) for key in values), default=0)
        lines = []
        for key, value in values.items():
            shown = SerializationUtils.serialize_value(value).serialized
            if isinstance(value, (float, np.floating)):
                shown = SerializationUtils.format_real(value)
            lines.append(f"{key.ljust(width)} : {shown}")
        return "\n".join(lines)

    @staticmethod
    def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], path: PathLike) -> int:
        """
        Write a CSV table with a header line; reals use 12 significant digits.

        Returns:
            Number of data rows written
        """
        count = 0
        with open(Path(path), "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow(
                    SerializationUtils.format_real(cell) if isinstance(cell, (float, np.floating)) else cell
                    for cell in row
                )
                count += 1
        logger.debug(f"Wrote {count} CSV rows to {path}")
        return count
