"""
Run templates for witnesspy configurations

Templates are starting points for batch runs; `witnesspy gen --template NAME`
writes one to disk.
"""

from pathlib import Path
from typing import Any, Dict, List, Union
import copy
import logging

from .config_parser import ConfigParser

logger = logging.getLogger(__name__)

TEMPLATES: Dict[str, Dict[str, Any]] = {
    "lnorm": {
        "lnorm": {
            "k": 2,
            "method": "exact",
            "depth": 3,
            "skip_frac": 0.75,
            "guess": 0,
        }
    },
    "gilbert": {
        "gilbert": {
            "eta": 0.8,
            "eps": 1.0e-6,
            "imax": 200000,
            "buffer": 40,
            "oracle_restarts": 20,
            "seed": 0,
            "scale": 1000,
            "packing": 20,
        }
    },
    "certify": {
        "certify": {
            "depth": 3,
            "skip_frac": 0.75,
            "restarts": 10,
            "seed": 0,
            "bisect": True,
            "tol": 1.0e-9,
        }
    },
    "gisin": {
        "gisin": {
            "samples": 1000000,
            "seed": 1,
            "pairs": "random:20",
            "workers": 1,
        }
    },
}


class TemplateManager:
    """
    Template management utilities.

    Examples:
        >>> TemplateManager.get_template("lnorm")["lnorm"]["k"]
        2
    """

    @staticmethod
    def list_templates() -> List[str]:
        return sorted(TEMPLATES)

    @staticmethod
    def get_template(name: str) -> Dict[str, Any]:
        """
        Get a copy of a run template.

        Raises:
            ValueError: If the template is unknown
        """
        if name not in TEMPLATES:
            raise ValueError(f"Unknown template: {name} (available: {', '.join(sorted(TEMPLATES))})")
        return copy.deepcopy(TEMPLATES[name])

    @staticmethod
    def write_template(name: str, output_file: Union[str, Path]) -> Dict[str, Any]:
        """Write a template as YAML or JSON by suffix; returns the written mapping."""
        template = TemplateManager.get_template(name)
        ConfigParser.save_config(template, output_file)
        logger.info(f"Wrote '{name}' template to {output_file}")
        return template

    def __str__(self) -> str:
        return "TemplateManager()"

    def __repr__(self) -> str:
        return f"TemplateManager(templates={self.list_templates()})"
