"""
Witness search

This package provides the modified Gilbert algorithm:
- GilbertConfig / GilbertState
- gilbert_oracle, gilbert_project and run_gilbert
- write_dist_history for plotting the convergence
"""

from .gilbert import GilbertConfig, GilbertState, gilbert_oracle, gilbert_project, run_gilbert, write_dist_history

__all__ = [
    "GilbertConfig",
    "GilbertState",
    "gilbert_oracle",
    "gilbert_project",
    "run_gilbert",
    "write_dist_history",
]
