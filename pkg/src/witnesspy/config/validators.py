"""
Configuration validators for witnesspy runs

This module provides the value predicates used to check run-configuration
sections before any computation starts.
"""

from typing import Any


class ConfigValidator:
    """
    Configuration validation utilities.

    Each predicate returns True or False and never raises; booleans are not
    accepted where numbers are expected.
    """

    @staticmethod
    def is_positive_int(value: Any) -> bool:
        """
        Check for an integer >= 1.

        Examples:
            >>> ConfigValidator.is_positive_int(8)
            True
            >>> ConfigValidator.is_positive_int(True)
            False
        """
        return isinstance(value, int) and not isinstance(value, bool) and value >= 1

    @staticmethod
    def is_non_negative_int(value: Any) -> bool:
        return isinstance(value, int) and not isinstance(value, bool) and value >= 0

    @staticmethod
    def is_positive_real(value: Any) -> bool:
        return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0

    @staticmethod
    def is_fraction(value: Any) -> bool:
        """Check for a real number in [0, 1]."""
        return isinstance(value, (int, float)) and not isinstance(value, bool) and 0.0 <= value <= 1.0

    @staticmethod
    def is_eta(value: Any) -> bool:
        """
        Check a detection efficiency; any value in [0, 1] is accepted.

        Values below 1/2 are legal but lie inside the one-bit polytope.
        """
        return ConfigValidator.is_fraction(value)

    @staticmethod
    def is_boolean(value: Any) -> bool:
        return isinstance(value, bool)

    @staticmethod
    def is_text(value: Any) -> bool:
        return isinstance(value, str) and len(value) > 0

    def __str__(self) -> str:
        return "ConfigValidator()"

    def __repr__(self) -> str:
        return "ConfigValidator()"
