"""
Utility modules for witnesspy

This package provides:
- Environment variable and .env handling
- Serialization of reports, key-value files and CSV tables
"""

from .env_utils import EnvManager
from .serialization_utils import SerializationUtils, SerializedValue, ValueKind

__all__ = [
    "EnvManager",
    "SerializationUtils",
    "SerializedValue",
    "ValueKind",
]
