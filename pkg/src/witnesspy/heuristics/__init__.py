"""
Alternating (see-saw) heuristics

This package provides:
- seesaw_l2: one-bit lower bound with its deterministic strategy
- seesaw_lk / seesaw_local: k-message and local-bound variants
- OneBitStrategy and the correlation matrix it induces
"""

from .seesaw import (
    OneBitStrategy,
    SeesawReport,
    seesaw_l2,
    seesaw_lk,
    seesaw_local,
    strategy_correlation,
    strategy_from_assignment,
    strategy_value,
)

__all__ = [
    "OneBitStrategy",
    "SeesawReport",
    "seesaw_l2",
    "seesaw_lk",
    "seesaw_local",
    "strategy_correlation",
    "strategy_from_assignment",
    "strategy_value",
]
