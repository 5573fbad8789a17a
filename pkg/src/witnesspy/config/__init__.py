"""
Configuration management for witnesspy runs

This module provides run-configuration file parsing, validation, and
template management for batch and CI runs.
"""

from .config_parser import SECTION_SCHEMAS, ConfigParser
from .templates import TemplateManager
from .validators import ConfigValidator

__all__ = [
    "ConfigParser",
    "ConfigValidator",
    "TemplateManager",
    "SECTION_SCHEMAS",
]
